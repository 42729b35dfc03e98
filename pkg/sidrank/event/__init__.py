# -*- coding: utf-8 -*-
from functools import wraps

from .bus import Bus, ANY_EVENT

bus = Bus()


def event(event_name: str):
    """
    Declare a method of an event catalogue class. Calling it emits event_name on the global bus with the call
    arguments, and "name" holds the event name for action bindings.
    """

    def decorator(function):
        @wraps(function)
        def emit(_, *args, **kwargs):
            bus.emit(event_name, *args, **kwargs)

        emit.name = event_name
        return emit

    return decorator
