# -*- coding: utf-8 -*-
from argparse import ArgumentParser
from typing import Callable, Optional

from ..context import context
from ..event import bus
from ..registry import DefaultRegistryObject

ParserHook = Callable[[ArgumentParser], None]


class Phase(DefaultRegistryObject):
    """
    A pipeline stage. Executing it emits "phase:<name>", and the actions of the stage listen to this event.

    parser adds the stage arguments to the parser of every command running it.
    """

    def __init__(self, name: str, description: Optional[str] = None, parser: Optional[ParserHook] = None):
        super().__init__(name, description)
        self._parser = parser

    @property
    def event_name(self) -> str:
        """
        Event emitted by the phase.
        """
        return "phase:" + self.name

    def configure_parser(self, parser: ArgumentParser):
        """
        Add the stage arguments.
        """
        if self._parser:
            self._parser(parser)

    def execute(self):
        """
        Emit the phase event.
        """
        bus.emit(self.event_name)


def execute_phase(phase: Phase):
    """
    Run a phase as the current phase of the context.
    """
    context.phase = phase
    try:
        phase.execute()
    finally:
        context.phase = None
