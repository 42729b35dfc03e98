# -*- coding: utf-8 -*-
from abc import abstractmethod, ABC
from typing import Callable, Tuple, Union

from ..registry import RegistryObject

# An event callable declared with @event, or its name.
Trigger = Union[Callable, str]


class Action(RegistryObject, ABC):
    """
    A pipeline step. Its "execute" method runs when one of its triggers is emitted on the bus, with the event
    arguments.
    """

    @property
    @abstractmethod
    def event_bindings(self) -> Union[Trigger, Tuple[Trigger, ...]]:
        """
        Events triggering the action, most often the phase of the command producing an artifact.
        """

    @property
    def order(self) -> int:
        """
        Actions bound to the same event run by ascending order.
        """
        return 0

    @property
    def disabled(self) -> bool:
        """
        A disabled action isn't bound to the bus.
        """
        return False

    def triggers(self) -> Tuple[str, ...]:
        """
        Names of the events triggering the action.
        """
        bindings = self.event_bindings
        if isinstance(bindings, str) or callable(bindings):
            bindings = (bindings,)
        return tuple(binding if isinstance(binding, str) else binding.name for binding in bindings)
