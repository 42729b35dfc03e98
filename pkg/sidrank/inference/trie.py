# -*- coding: utf-8 -*-
from typing import Iterable, Tuple, Dict, List

from ..tokenizer import SemanticId


class SidTrie:
    """
    Prefix tree of corpus semantic ids.
    """

    def __init__(self, sids: Iterable[SemanticId] = ()):
        self._children = {}  # type: Dict[Tuple[int, ...], set]
        for sid in sids:
            self.add(sid)

    def add(self, sid: SemanticId):
        """
        Add a semantic id.
        """
        codes = tuple(sid)
        for depth in range(len(codes)):
            self._children.setdefault(codes[:depth], set()).add(codes[depth])

    def children(self, prefix: Tuple[int, ...]) -> List[int]:
        """
        Codes that extend a prefix towards at least one corpus item, sorted.
        """
        return sorted(self._children.get(tuple(prefix), ()))
