# -*- coding: utf-8 -*-
import logging
from collections import defaultdict
from typing import Dict, Sequence, Optional, Set, Tuple

import numpy as np

from .codebooks import Codebooks, ItemFeature, SemanticId, _squared_distances, _as_matrix
from ..errors import DimensionError, CapacityExceeded, InvalidCorpus

log = logging.getLogger(__name__)


def encode_vectors(points: np.ndarray, codebooks: Codebooks) -> np.ndarray:
    """
    Encode a n x d matrix into a n x m matrix of codes, picking the nearest codeword of each level residual.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != codebooks.dim:
        raise DimensionError("expected vectors of dimension %d, got shape %s" % (codebooks.dim, points.shape))
    codes = np.zeros((points.shape[0], codebooks.m), dtype=np.int64)
    residual = points
    for level, codebook in enumerate(codebooks.levels):
        codes[:, level] = np.argmin(_squared_distances(residual, codebook), axis=1)
        residual = residual - codebook[codes[:, level]]
    return codes


def encode_item(feature: ItemFeature, codebooks: Codebooks) -> SemanticId:
    """
    Semantic id of a single item, without collision handling.
    """
    if feature.dim != codebooks.dim:
        raise DimensionError("item %d: dimension %d, codebooks dimension %d"
                             % (feature.item_id, feature.dim, codebooks.dim))
    return SemanticId(tuple(encode_vectors(feature.vector[None, :], codebooks)[0]))


def _ranked_codes(residual: np.ndarray, codebook: np.ndarray) -> np.ndarray:
    distances = ((codebook - residual[None, :]) ** 2).sum(axis=1)
    return np.argsort(distances, kind="stable")


def _search_free(residual: np.ndarray, level: int, prefix: Tuple[int, ...], exclude: Optional[int],
                 codebooks: Codebooks, taken: Set[SemanticId]) -> Optional[SemanticId]:
    codebook = codebooks.levels[level]
    for code in _ranked_codes(residual, codebook):
        code = int(code)
        if code == exclude:
            continue
        codes = prefix + (code,)
        if level == codebooks.m - 1:
            sid = SemanticId(codes)
            if sid not in taken:
                return sid
        else:
            found = _search_free(residual - codebook[code], level + 1, codes, None, codebooks, taken)
            if found is not None:
                return found
    return None


def _nearest_free(vector: np.ndarray, original: SemanticId, codebooks: Codebooks,
                  taken: Set[SemanticId]) -> SemanticId:
    """
    Nearest unused semantic id: the last level is searched first under the original prefix, then the
    search backtracks one level at a time towards next-nearest prefixes.
    """
    for depth in reversed(range(codebooks.m)):
        prefix = original.codes[:depth]
        residual = vector - (codebooks.reconstruct(prefix) if depth else 0.0)
        exclude = original[depth] if depth < codebooks.m - 1 else None
        found = _search_free(residual, depth, prefix, exclude, codebooks, taken)
        if found is not None:
            return found
    raise CapacityExceeded("no free semantic id left for a colliding item")


def assign_corpus(features: Sequence[ItemFeature], codebooks: Codebooks) -> Dict[int, SemanticId]:
    """
    Unique semantic id for each item. When several items share an id, the item nearest to the id
    reconstruction keeps it (lowest item id on ties), the others move to the nearest free id.
    """
    if not features:
        raise InvalidCorpus("feature list is empty")
    if len(features) > codebooks.capacity:
        raise CapacityExceeded("%d items can't fit in %d semantic ids (sizes %s)"
                               % (len(features), codebooks.capacity, list(codebooks.sizes)))
    item_ids = [feature.item_id for feature in features]
    if len(set(item_ids)) != len(item_ids):
        raise InvalidCorpus("item ids should be unique")

    points = _as_matrix(features)
    codes = encode_vectors(points, codebooks)

    groups = defaultdict(list)
    for index, row in enumerate(codes):
        groups[SemanticId(tuple(row))].append(index)

    assigned: Dict[int, SemanticId] = {}
    taken: Set[SemanticId] = set(groups.keys())
    displaced = []
    for sid in sorted(groups.keys()):
        members = groups[sid]
        reconstruction = codebooks.reconstruct(sid.codes)
        members = sorted(members, key=lambda index: (float(((points[index] - reconstruction) ** 2).sum()),
                                                     item_ids[index]))
        assigned[item_ids[members[0]]] = sid
        displaced.extend((index, sid) for index in members[1:])

    for index, sid in displaced:
        free = _nearest_free(points[index], sid, codebooks, taken)
        taken.add(free)
        assigned[item_ids[index]] = free

    if displaced:
        log.info("Resolved %d semantic id collisions", len(displaced))
    return {item_id: assigned[item_id] for item_id in item_ids}
