# -*- coding: utf-8 -*-
from typing import Dict, Iterable, Optional

from .cache import ResultCache, CachedResult


class MemoryCache(ResultCache):
    """
    In process result cache, standing for the remote key-value store of a real deployment. Counts reads and writes.
    """

    def __init__(self, ttl_ms: int):
        super().__init__(ttl_ms)
        self._results = {}  # type: Dict[int, CachedResult]
        self.reads = 0
        self.writes = 0

    def write(self, user_id: int, result: CachedResult):
        self.writes += 1
        self._results[user_id] = result

    def read(self, user_id: int) -> Optional[CachedResult]:
        self.reads += 1
        return self._results.get(user_id)

    def users(self) -> Iterable[int]:
        return tuple(self._results)

    def close(self):
        self._results.clear()

    def __len__(self):
        return len(self._results)
