# -*- coding: utf-8 -*-
import logging

from .action import Action
from ..config import config
from ..context import context
from ..context.context import ContextStackItem
from ..errors import ExpectedError, FailFastError


class ActionRunner:  # pylint:disable=too-few-public-methods
    """
    Runs an action for one of its triggers.

    Errors are appended to context.exceptions and logged. They stop the command in fail fast mode, or when they are
    FailFastError (a missing artifact or a digest mismatch makes every later phase meaningless).
    """

    def __init__(self, action: Action, event_name: str, fail_fast=False):
        self.action = action
        self.event_name = event_name
        self.fail_fast = fail_fast

    def run(self, *args, **kwargs) -> bool:
        """
        Execute the action, returning False when it failed.
        """
        context.stack.append(ContextStackItem(self.event_name, self.action))
        try:
            context.log.debug("Execute action %s", context.stack)
            self.action.execute(*args, **kwargs)
            return True
        except Exception as exception:  # pylint:disable=broad-except
            context.exceptions.append(exception)
            self._log(exception)
            if self.fail_fast or isinstance(exception, FailFastError):
                raise
            return False
        finally:
            context.stack.pop()

    @staticmethod
    def _log(exception: Exception):
        with_traceback = getattr(config.args, 'exceptions', False)
        if isinstance(exception, ExpectedError):
            exception.log_error(with_traceback=with_traceback)
            return
        log_error = context.log.exception if with_traceback or context.log.isEnabledFor(logging.DEBUG) \
            else context.log.error
        log_error("%s: %s", type(exception).__name__, " ".join(str(exception).split()))
