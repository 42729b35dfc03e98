# -*- coding: utf-8 -*-
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class CachedResult:
    """
    Retrieval result pushed by the pre-computation engine for a request.
    """
    request: int
    version: int
    digest: str
    written_at: int


class ResultCache(ABC):
    """
    Retrieval results by user, one entry per user, the last write wins. Entries expire ttl_ms after being written.
    """

    def __init__(self, ttl_ms: int):
        if ttl_ms < 1:
            raise ValueError("ttl_ms should be >= 1, got %d" % ttl_ms)
        self.ttl_ms = ttl_ms

    @abstractmethod
    def write(self, user_id: int, result: CachedResult):
        """
        Store the result of user_id.
        """

    @abstractmethod
    def read(self, user_id: int) -> Optional[CachedResult]:
        """
        Last result written for user_id, expired or not.
        """

    @abstractmethod
    def users(self) -> Iterable[int]:
        """
        Users holding an entry.
        """

    def fresh(self, user_id: int, now: int) -> Optional[CachedResult]:
        """
        Result of user_id if it was written at most ttl_ms before now.
        """
        result = self.read(user_id)
        if result is None or now - result.written_at > self.ttl_ms:
            return None
        return result

    def close(self):
        """
        Release the store.
        """
