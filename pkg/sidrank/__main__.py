#!/usr/bin/env python
# -*- coding: utf-8 -*-
import logging
import sys
from argparse import ArgumentParser, Namespace, SUPPRESS
from typing import List, Optional, Sequence, Tuple, Union

import verboselogs
from colorlog import default_log_colors, ColoredFormatter

from sidrank.action import actions
from sidrank.action.runner import ActionRunner
from sidrank.command import commands, Command
from sidrank.command.command import execute_command
from sidrank.config import config
from sidrank.context import context
from sidrank.errors import ExpectedError
from sidrank.event import bus, events
from sidrank.feature import features
from sidrank.feature.bootstrap import bootstrap_register_features, configure_features
from sidrank.phase import phases
from sidrank.training import variants, register_default_variants

# Command line flags overriding configuration keys.
COMMAND_LINE_OVERRIDES = (("seed", "run.seed"),
                          ("out", "run.out"),
                          ("variant", "run.variant"),
                          ("parameter", "sweep.parameter"),
                          ("values", "sweep.values"))

LOG_COLORS = dict(default_log_colors, NOTICE='thin_white', VERBOSE='thin_white', DEBUG='thin_cyan',
                  SUCCESS='bold_green', SPAM='bold_red')

LOG = logging.getLogger("sidrank")


class ParseCommandLineException(Exception):
    """
    No command was given, the usage has been printed.
    """

    def __init__(self, opts: ArgumentParser, parsed_args: Namespace):
        super().__init__()
        self.opts = opts
        self.parsed_args = parsed_args


class _ShortNameFormatter(ColoredFormatter):
    def format(self, record):
        record.simplename = record.name.rsplit(".", 1)[-1]
        return super().format(record)


def configure_logging(level: Union[str, int] = logging.INFO):
    """
    Log to stderr with colors, prefixed by the last part of the logger name (the action name for actions).
    """
    verboselogs.install()
    handler = logging.StreamHandler()
    handler.setFormatter(_ShortNameFormatter('%(log_color)s[%(simplename)s] %(message)s', log_colors=LOG_COLORS))
    LOG.handlers.clear()
    LOG.setLevel(level)
    LOG.addHandler(handler)


def _log_level(parsed_args: Namespace) -> str:
    if parsed_args.very_verbose:
        return 'DEBUG'
    if parsed_args.verbose:
        return 'VERBOSE'
    if parsed_args.silent:
        return 'CRITICAL'
    return 'INFO'


def _add_run_arguments(parser: ArgumentParser):
    parser.add_argument('--seed', type=int, default=SUPPRESS, help="Run seed")
    parser.add_argument('--config', default=SUPPRESS, help="Additional configuration file")
    parser.add_argument('--out', default=SUPPRESS, help="Output directory")
    parser.add_argument('--variant', default=SUPPRESS, help="Model variant (full, no-iap, no-rsp, no-both)")


def parse_command_line(args: Optional[Sequence[str]] = None) -> Tuple[Command, Namespace]:
    """
    Parse arguments and configure logging. Raises ParseCommandLineException when no command is given.
    """
    opts = ArgumentParser(prog="sidrank")
    opts.add_argument('-v', '--verbose', action="store_true", help="Enable more logs")
    opts.add_argument('-vv', '--very-verbose', action="store_true", help="Enable even more logs")
    opts.add_argument('-s', '--silent', action="store_true", help="Disable all logs")
    opts.add_argument('-x', '--exceptions', action="store_true", help="Display exceptions on errors")
    opts.add_argument('-ff', '--fail-fast', action="store_true", help="Stop on first error")
    _add_run_arguments(opts)

    subparsers = opts.add_subparsers(dest="command", help='Available commands')
    for command in commands.all():
        parser = command.add_parser(subparsers)
        _add_run_arguments(parser)
        command.configure_parser(parser)

    parsed_args = opts.parse_args(args)
    configure_logging(_log_level(parsed_args))

    if not parsed_args.command:
        raise ParseCommandLineException(opts, parsed_args)
    return commands.get(parsed_args.command), parsed_args


def apply_command_line_overrides(args: Namespace):
    """
    Copy --seed, --out, --variant and sweep flags into configuration.
    """
    for arg, key in COMMAND_LINE_OVERRIDES:
        value = getattr(args, arg, None)
        if value is not None:
            config.data[key] = value


def register_features():
    """
    Register features, with their phases and commands, and model variants.
    """
    bootstrap_register_features()
    for feature in features.all():
        for phase in feature.phases:
            phases.register(phase)
        for command in feature.commands:
            commands.register(command)
    register_default_variants()


def bind_actions(fail_fast=False):
    """
    Load and validate configuration, then bind actions of enabled features to their events.
    """
    config.load()
    apply_command_line_overrides(config.args)
    configure_features()

    for feature in features.all():
        if feature.disabled:
            continue
        for action in feature.actions:
            if not action.disabled:
                actions.register(action)

    for action in sorted(actions.all(), key=lambda item: item.order):
        for event_name in action.triggers():
            bus.on(event_name, ActionRunner(action, event_name, fail_fast).run)


def main(args: Optional[Sequence[str]] = None, reset_disabled=False) -> List[Exception]:
    """
    Run a command line. Returns exceptions collected while running the command.
    """
    try:
        register_features()

        try:
            command, config.args = parse_command_line(args)
        except ParseCommandLineException as exc:
            config.args = exc.parsed_args
            exc.opts.print_help()
            raise

        bind_actions(config.args.fail_fast)

        events.main.start(command=command)
        execute_command(command)
        events.main.terminate(command=command)
        return context.exceptions
    except ExpectedError as exception:
        if exception not in context.exceptions:
            exception.log_error(LOG, with_traceback=getattr(config.args, "exceptions", False))
        return [exception]
    finally:
        if not reset_disabled:
            reset()


def reset():
    """
    Clear registries, configuration and context, so main can run again.
    """
    bus.clear()
    for registry in (features, phases, commands, actions, variants):
        registry.close()
    context.reset()
    config.reset()


def console_script():  # pragma: no cover
    """
    Console script entrypoint, exits 1 when the command failed.
    """
    try:
        exceptions = main()
    except ParseCommandLineException:
        sys.exit(1)
    if exceptions:
        sys.exit(1)


if __name__ == '__main__':  # pragma: no cover
    console_script()
