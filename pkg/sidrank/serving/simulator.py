# -*- coding: utf-8 -*-
import hashlib
import heapq
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Sequence, List, Optional, Tuple, TextIO

import numpy as np

from .events import EventKind, ServingEvent, EventQueue
from ..cache import CachedResult, MemoryCache
from ..errors import ConfigValidationError
from ..event.bus import Bus

log = logging.getLogger(__name__)

HOUR_MS = 3600 * 1000

RetrievalHandle = Callable[[int, int], Sequence[int]]


@dataclass(frozen=True)
class SimConfig:  # pylint:disable=too-many-instance-attributes
    """
    Serving simulation parameters, durations in virtual milliseconds. inference_workers = 0 means unbounded.
    """
    request_rate: float = 2.0
    n_users: int = 50
    inference_latency_ms: int = 60
    latency_jitter_ms: int = 0
    window_ms: int = 100
    lookup_ms: int = 1
    cache_ttl_ms: int = HOUR_MS
    sync_period_ms: int = HOUR_MS
    duration_ms: int = 3 * HOUR_MS
    inference_workers: int = 0
    allow_stale: bool = False
    seed: int = 0

    def __post_init__(self):
        for name in ("inference_latency_ms", "window_ms", "cache_ttl_ms", "sync_period_ms", "duration_ms"):
            if getattr(self, name) <= 0:
                raise ConfigValidationError("serving %s should be > 0" % name)
        if self.request_rate <= 0 or self.n_users < 1:
            raise ConfigValidationError("serving request_rate and n_users should be > 0")
        if self.lookup_ms < 0 or self.latency_jitter_ms < 0 or self.inference_workers < 0:
            raise ConfigValidationError("serving lookup_ms, latency_jitter_ms and inference_workers should be >= 0")
        if self.latency_jitter_ms >= self.inference_latency_ms:
            raise ConfigValidationError("serving latency_jitter_ms should be lower than inference_latency_ms")


class TrainerHandle(ABC):
    """
    Streaming trainer seen by the simulation.
    """

    @abstractmethod
    def ingest(self, user_id: int, time: int):
        """
        A served request produced a training sample.
        """

    @abstractmethod
    def sync(self, time: int) -> int:
        """
        Publish a model and return its version.
        """


class VersionCounter(TrainerHandle):
    """
    Trainer handle that only counts samples and versions.
    """

    def __init__(self):
        self.version = 0
        self.ingested = 0

    def ingest(self, user_id: int, time: int):
        self.ingested += 1

    def sync(self, time: int) -> int:
        self.version += 1
        return self.version


@dataclass
class ServedRequest:  # pylint:disable=too-many-instance-attributes
    """
    Outcome of one request on the realtime path.
    """
    request_id: int
    user_id: int
    arrival: int
    served_at: int
    hit: bool
    stale: bool
    version: Optional[int]
    staleness_ms: int
    latency_ms: int
    result_digest: str


@dataclass
class ServingReport:  # pylint:disable=too-many-instance-attributes
    """
    Cache effectiveness, realtime latency and staleness of a simulation.
    """
    requests: int = 0
    hits: int = 0
    misses: int = 0
    stale_served: int = 0
    p50_latency_ms: float = 0.0
    p99_latency_ms: float = 0.0
    mean_staleness_ms: float = 0.0
    syncs: int = 0
    ingested: int = 0
    served: List[ServedRequest] = field(default_factory=list, repr=False)
    timeline: List[Tuple[int, int]] = field(default_factory=list, repr=False)
    events: List[str] = field(default_factory=list, repr=False)

    @property
    def hit_rate(self) -> float:
        """
        Share of requests served from a fresh cache entry.
        """
        return self.hits / self.requests if self.requests else 0.0

    @property
    def fresh_served(self) -> int:
        """
        Requests served with the result computed for them.
        """
        return self.hits

    def summary(self) -> List[Tuple[str, str]]:
        """
        Report as key, value pairs.
        """
        return [("requests", str(self.requests)),
                ("hits", str(self.hits)),
                ("misses", str(self.misses)),
                ("hit_rate", "%.6f" % self.hit_rate),
                ("fresh_served", str(self.fresh_served)),
                ("stale_served", str(self.stale_served)),
                ("p50_latency_ms", "%.3f" % self.p50_latency_ms),
                ("p99_latency_ms", "%.3f" % self.p99_latency_ms),
                ("mean_staleness_ms", "%.3f" % self.mean_staleness_ms),
                ("syncs", str(self.syncs)),
                ("ingested", str(self.ingested))]

    def write_events(self, stream: TextIO):
        """
        Write the event log, one event per line.
        """
        for line in self.events:
            stream.write(line + "\n")


def _digest(items: Sequence[int]) -> str:
    return hashlib.sha256(",".join(str(item) for item in items).encode("utf-8")).hexdigest()[:16]


class Simulator:  # pylint:disable=too-many-instance-attributes
    """
    Discrete event simulation of asynchronous pre-computation: each request triggers inference on arrival, the
    result is written to a cache keyed by user, and the realtime path reads it when the request window closes.

    Events are dispatched through a dedicated bus, named after their kind.
    """

    def __init__(self, config: SimConfig, retrieval: RetrievalHandle, trainer: Optional[TrainerHandle] = None,
                 arrivals: Optional[Sequence[Tuple[int, int]]] = None):
        self.config = config
        self.retrieval = retrieval
        self.trainer = trainer if trainer is not None else VersionCounter()
        self.arrivals = arrivals
        self.rng = np.random.default_rng(config.seed)
        self.queue = EventQueue()
        self.bus = Bus()
        self.cache = MemoryCache(config.cache_ttl_ms)
        self.now = 0
        self.version = 0
        self.last_sync = 0
        self.report = ServingReport()
        self._workers = []  # type: List[int]
        self._latencies = []  # type: List[int]
        self._staleness = []  # type: List[int]
        self.bus.on(EventKind.REQUEST_ARRIVE.value, self._on_request_arrive)
        self.bus.on(EventKind.ASYNC_TRIGGER.value, self._on_async_trigger)
        self.bus.on(EventKind.INFERENCE_DONE.value, self._on_inference_done)
        self.bus.on(EventKind.CACHE_WRITE.value, self._on_cache_write)
        self.bus.on(EventKind.REALTIME_FETCH.value, self._on_realtime_fetch)
        self.bus.on(EventKind.SAMPLE_INGEST.value, self._on_sample_ingest)
        self.bus.on(EventKind.MODEL_SYNC.value, self._on_model_sync)

    def _schedule_arrivals(self):
        if self.arrivals is not None:
            arrivals = list(self.arrivals)
        else:
            arrivals = []
            time = 0.0
            mean_gap = 1000.0 / self.config.request_rate
            while True:
                time += self.rng.exponential(mean_gap)
                if int(time) >= self.config.duration_ms:
                    break
                arrivals.append((int(time), int(self.rng.integers(self.config.n_users))))
        for request_id, (time, user_id) in enumerate(arrivals):
            self.queue.push(time, EventKind.REQUEST_ARRIVE, request=request_id, user=user_id)

    def _schedule_syncs(self):
        for index in range(1, self.config.duration_ms // self.config.sync_period_ms + 1):
            self.queue.push(index * self.config.sync_period_ms, EventKind.MODEL_SYNC, index=index)

    def _latency(self) -> int:
        jitter = self.config.latency_jitter_ms
        if not jitter:
            return self.config.inference_latency_ms
        return self.config.inference_latency_ms + int(self.rng.integers(-jitter, jitter + 1))

    def _on_request_arrive(self, event: ServingEvent):
        self.report.requests += 1
        self.queue.push(event.time, EventKind.ASYNC_TRIGGER, **event.payload)
        self.queue.push(event.time + self.config.window_ms, EventKind.REALTIME_FETCH, arrival=event.time,
                        **event.payload)

    def _on_async_trigger(self, event: ServingEvent):
        start = event.time
        if self.config.inference_workers:
            if len(self._workers) >= self.config.inference_workers:
                start = max(start, heapq.heappop(self._workers))
        done = start + self._latency()
        if self.config.inference_workers:
            heapq.heappush(self._workers, done)
        self.queue.push(done, EventKind.INFERENCE_DONE, version=self.version, queued=start - event.time,
                        **event.payload)

    def _on_inference_done(self, event: ServingEvent):
        items = list(self.retrieval(event.payload["version"], event.payload["user"]))
        self.queue.push(event.time, EventKind.CACHE_WRITE, items=_digest(items), **event.payload)

    def _on_cache_write(self, event: ServingEvent):
        self.cache.write(event.payload["user"], CachedResult(event.payload["request"], event.payload["version"],
                                                             event.payload["items"], event.time))

    def _on_realtime_fetch(self, event: ServingEvent):
        request_id = event.payload["request"]
        user_id = event.payload["user"]
        entry = self.cache.fresh(user_id, event.time)
        hit = entry is not None and entry.request == request_id
        stale = entry is not None and not hit and self.config.allow_stale
        if hit:
            self.report.hits += 1
        else:
            self.report.misses += 1
            if stale:
                self.report.stale_served += 1
        served = entry if hit or stale else None
        latency = self.config.lookup_ms
        staleness = event.time - self.last_sync
        self._latencies.append(latency)
        self._staleness.append(staleness)
        self.report.served.append(ServedRequest(request_id, user_id, event.payload["arrival"], event.time, hit,
                                                stale, served.version if served else None, staleness, latency,
                                                served.digest if served else _digest([])))
        self.queue.push(event.time, EventKind.SAMPLE_INGEST, user=user_id, request=request_id)

    def _on_sample_ingest(self, event: ServingEvent):
        self.trainer.ingest(event.payload["user"], event.time)
        self.report.ingested += 1

    def _on_model_sync(self, event: ServingEvent):
        self.version = self.trainer.sync(event.time)
        self.last_sync = event.time
        self.report.syncs += 1
        self.report.timeline.append((event.time, self.version))

    def run(self) -> ServingReport:
        """
        Process every event in time order.
        """
        self._schedule_arrivals()
        self._schedule_syncs()
        self.report.timeline.append((0, self.version))
        while True:
            event = self.queue.pop()
            if event is None:
                break
            self.now = event.time
            self.report.events.append(str(event))
            self.bus.emit(event.kind.value, event)

        if self._latencies:
            self.report.p50_latency_ms = float(np.percentile(self._latencies, 50))
            self.report.p99_latency_ms = float(np.percentile(self._latencies, 99))
            self.report.mean_staleness_ms = float(np.mean(self._staleness))
        log.debug("Simulated %d requests, hit rate %.3f", self.report.requests, self.report.hit_rate)
        return self.report


def run_simulation(config: SimConfig, retrieval: RetrievalHandle, trainer: Optional[TrainerHandle] = None,
                   arrivals: Optional[Sequence[Tuple[int, int]]] = None) -> ServingReport:
    """
    Run a serving simulation. retrieval(version, user_id) returns the item ids computed by a model version.
    """
    return Simulator(config, retrieval, trainer, arrivals).run()


def streaming_update_loop(config: SimConfig, trainer: TrainerHandle,
                          arrivals: Optional[Sequence[Tuple[int, int]]] = None) -> List[Tuple[int, int]]:
    """
    Model version timeline, as (sync time, version) pairs starting with version 0 at time 0, of a simulation where
    served requests feed the trainer.
    """
    return Simulator(config, lambda version, user_id: [], trainer, arrivals).run().timeline
