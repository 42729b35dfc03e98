# -*- coding: utf-8 -*-
from collections import defaultdict
from typing import Callable, DefaultDict, List, Optional

# Listeners registered with this key receive every event, its name first.
ANY_EVENT = None


class Bus:
    """
    Synchronous event dispatcher.

    The global bus drives commands: phases emit "phase:<name>" and actions listen to them. The serving simulator owns
    a private bus dispatching its virtual clock events by kind.
    """

    def __init__(self):
        self._listeners = defaultdict(list)  # type: DefaultDict[Optional[str], List[Callable]]

    def on(self, event_name: Optional[str], listener: Callable) -> Callable[[], None]:  # pylint:disable=invalid-name
        """
        Listen to event_name, or to every event with ANY_EVENT. Returns a callable removing the listener.
        """
        self._listeners[event_name].append(listener)
        return lambda: self.off(event_name, listener)

    def off(self, event_name: Optional[str], listener: Callable):
        """
        Stop listening.
        """
        if listener in self._listeners.get(event_name, ()):
            self._listeners[event_name].remove(listener)

    def clear(self):
        """
        Remove every listener.
        """
        self._listeners.clear()

    def emit(self, event_name: str, *args, **kwargs):
        """
        Invoke listeners of event_name in registration order, then listeners of every event.
        """
        for listener in list(self._listeners.get(event_name, ())):
            listener(*args, **kwargs)
        for listener in list(self._listeners.get(ANY_EVENT, ())):
            listener(event_name, *args, **kwargs)

    def has_named_listeners(self, event_name: str) -> bool:
        """
        Whether someone listens to event_name itself.
        """
        return bool(self._listeners.get(event_name))
