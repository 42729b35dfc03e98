# -*- coding: utf-8 -*-
import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Any, List, Tuple, Optional


class EventKind(Enum):
    """
    Kinds of serving events.
    """
    REQUEST_ARRIVE = "RequestArrive"
    ASYNC_TRIGGER = "AsyncTrigger"
    INFERENCE_DONE = "InferenceDone"
    CACHE_WRITE = "CacheWrite"
    REALTIME_FETCH = "RealtimeFetch"
    SAMPLE_INGEST = "SampleIngest"
    MODEL_SYNC = "ModelSync"


@dataclass(frozen=True)
class ServingEvent:
    """
    Event at a virtual time in milliseconds. sequence orders events of the same time by insertion.
    """
    time: int
    sequence: int
    kind: EventKind
    payload: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __str__(self):
        payload = " ".join("%s=%s" % (key, self.payload[key]) for key in sorted(self.payload))
        return ("%d\t%s\t%s" % (self.time, self.kind.value, payload)).rstrip()


class EventQueue:
    """
    Priority queue of events, by time then insertion order.
    """

    def __init__(self):
        self._heap = []  # type: List[Tuple[int, int, ServingEvent]]
        self._sequence = 0

    def push(self, time: int, kind: EventKind, **payload) -> ServingEvent:
        """
        Schedule an event.
        """
        if time < 0:
            raise ValueError("event time should be >= 0, got %d" % time)
        event = ServingEvent(int(time), self._sequence, kind, payload)
        self._sequence += 1
        heapq.heappush(self._heap, (event.time, event.sequence, event))
        return event

    def pop(self) -> Optional[ServingEvent]:
        """
        Next event, or None when the queue is empty.
        """
        if not self._heap:
            return None
        return heapq.heappop(self._heap)[2]

    def __len__(self):
        return len(self._heap)
