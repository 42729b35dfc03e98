# -*- coding: utf-8 -*-
import logging
from typing import Any, Dict, List, Optional
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..action import Action  # pylint:disable=cyclic-import
    from ..command import Command  # pylint:disable=cyclic-import
    from ..phase import Phase  # pylint:disable=cyclic-import


class ContextStackItem:  # pylint:disable=too-few-public-methods
    """
    An action running for an event.
    """

    def __init__(self, event_name: str, action: 'Action'):
        self.event_name = event_name
        self.action = action

    def __repr__(self):
        return "%s => %s" % (self.event_name, self.action.name)


class Context:
    """
    State of the running command.

    Artifacts produced by a phase (world, sessions, codebooks, trained model ...) are shared with the following
    phases of the same command through "artifacts", so a pipeline doesn't read back what it just wrote.
    """

    def __init__(self):
        self.command = None  # type: Optional['Command']
        self.phase = None  # type: Optional['Phase']
        self.stack = []  # type: List[ContextStackItem]
        self.exceptions = []  # type: List[Exception]
        self.artifacts = {}  # type: Dict[str, Any]

    def reset(self):
        """
        Forget everything about the previous command.
        """
        self.__init__()

    @property
    def action(self) -> Optional['Action']:
        """
        Action being executed.
        """
        return self.stack[-1].action if self.stack else None

    @property
    def log(self) -> logging.Logger:
        """
        Logger named after the running command, phase and action: "sidrank.context.<command>.<phase>.<action>".
        """
        names = [item.name for item in (self.command, self.phase, self.action) if item]
        return logging.getLogger(".".join(["sidrank.context"] + names))
