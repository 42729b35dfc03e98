# -*- coding: utf-8 -*-
from abc import ABC, abstractmethod
from argparse import ArgumentParser
from typing import List, Union

from ..context import context
from ..phase import phases, Phase
from ..phase.phase import execute_phase
from ..registry import RegistryObject, DefaultRegistryObject


class Command(RegistryObject, ABC):
    """
    A sub command of the "sidrank" program.
    """

    @abstractmethod
    def execute(self):
        """
        Run the command.
        """

    def configure_parser(self, parser: ArgumentParser):
        """
        Add the command specific arguments.
        """

    def add_parser(self, subparsers):
        """
        Declare the command in the program usage.
        """
        return subparsers.add_parser(self.name, help=self.description)


class LifecycleCommand(DefaultRegistryObject, Command):
    """
    A command running pipeline phases in order, "pipeline" is gen, tokenize, train and eval.

    Phases may be given by name, they are resolved in the phases registry when the command runs.
    """

    def __init__(self, name: str, description: str, *lifecycle: Union[str, Phase]):
        super().__init__(name, description)
        self._lifecycle = lifecycle

    @property
    def lifecycle(self) -> List[Phase]:
        """
        Phases of the command.
        """
        return [phase if isinstance(phase, Phase) else phases.get(phase) for phase in self._lifecycle]

    def configure_parser(self, parser: ArgumentParser):
        seen = set()
        for phase in self.lifecycle:
            if phase.name not in seen:
                seen.add(phase.name)
                phase.configure_parser(parser)

    def execute(self):
        for phase in self.lifecycle:
            execute_phase(phase)


def execute_command(command: Command):
    """
    Run a command as the current command of the context.
    """
    context.command = command
    try:
        command.execute()
    finally:
        context.command = None
