# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Iterator

import numpy as np

from ..checkpoint import CheckpointContainer
from ..errors import InvalidCorpus, InvalidFeature, DimensionError

log = logging.getLogger(__name__)

KMEANS_MAX_ITERATIONS = 50
KMEANS_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ItemFeature:
    """
    Feature vector of one item of the corpus.
    """
    item_id: int
    vector: np.ndarray = field(compare=False)

    def __post_init__(self):
        vector = np.asarray(self.vector, dtype=np.float64)
        if vector.ndim != 1:
            raise InvalidFeature("item %d: feature should be a vector, got shape %s" % (self.item_id, vector.shape))
        if not np.all(np.isfinite(vector)):
            raise InvalidFeature("item %d: feature holds non finite values" % self.item_id)
        object.__setattr__(self, 'vector', vector)

    @property
    def dim(self) -> int:
        """
        Feature dimension.
        """
        return self.vector.shape[0]


@dataclass(frozen=True, order=True)
class SemanticId:
    """
    Ordered tuple of per-level codeword indices identifying one item.
    """
    codes: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'codes', tuple(int(code) for code in self.codes))

    def __len__(self):
        return len(self.codes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.codes)

    def __getitem__(self, level_index):
        return self.codes[level_index]

    def __str__(self):
        return "-".join(str(code) for code in self.codes)


@dataclass
class Codebooks:
    """
    One V_l x d_feat codebook per level of the residual quantizer.
    """
    levels: List[np.ndarray]

    def __post_init__(self):
        if not self.levels:
            raise InvalidCorpus("at least one codebook level is required")
        self.levels = [np.asarray(level, dtype=np.float64) for level in self.levels]
        dim = self.levels[0].shape[1]
        for index, level in enumerate(self.levels):
            if level.ndim != 2 or level.shape[0] < 1 or level.shape[1] != dim:
                raise DimensionError("codebook %d has invalid shape %s" % (index + 1, level.shape))
            if not np.all(np.isfinite(level)):
                raise InvalidFeature("codebook %d holds non finite rows" % (index + 1))

    @property
    def m(self) -> int:  # pylint:disable=invalid-name
        """
        Number of levels, i.e. length of semantic ids.
        """
        return len(self.levels)

    @property
    def sizes(self) -> Tuple[int, ...]:
        """
        Codebook sizes {V_l}.
        """
        return tuple(level.shape[0] for level in self.levels)

    @property
    def dim(self) -> int:
        """
        Feature dimension.
        """
        return self.levels[0].shape[1]

    @property
    def capacity(self) -> int:
        """
        Number of distinct semantic ids.
        """
        return int(np.prod(self.sizes, dtype=np.int64))

    def reconstruct(self, codes: Sequence[int]) -> np.ndarray:
        """
        Sum of the codewords selected at each level.
        """
        return np.sum([self.levels[level][code] for level, code in enumerate(codes)], axis=0)

    def to_container(self, metadata=None) -> CheckpointContainer:
        """
        Store as "codebook.{l}" arrays (l starting at 1), with "m" and "sizes" metadata.
        """
        container = CheckpointContainer(metadata=metadata)
        for index, level in enumerate(self.levels):
            container.put("codebook.%d" % (index + 1), level)
        container.metadata["m"] = self.m
        container.metadata["sizes"] = list(self.sizes)
        return container

    @staticmethod
    def from_container(container: CheckpointContainer) -> 'Codebooks':
        """
        Load from a container written by to_container.
        """
        return Codebooks([container.get("codebook.%d" % (index + 1)) for index in range(container.metadata["m"])])


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=-1)


def _kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    closest = _squared_distances(points, points[chosen])[:, 0]
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            index = int(rng.choice(n, p=closest / total))
        else:
            # Fewer distinct points than centroids: duplicates are unavoidable.
            index = int(rng.integers(n))
        chosen.append(index)
        closest = np.minimum(closest, _squared_distances(points, points[[index]])[:, 0])
    return points[chosen].copy()


def kmeans(points: np.ndarray, k: int, rng: np.random.Generator,
           max_iterations=KMEANS_MAX_ITERATIONS, tolerance=KMEANS_TOLERANCE) -> np.ndarray:
    """
    Lloyd k-means with k-means++ seeding. Stops after max_iterations, or when no centroid moves more than tolerance.
    Empty clusters keep their previous centroid. Assignment ties go to the lowest centroid index.
    """
    centroids = _kmeans_plus_plus(points, k, rng)
    for iteration in range(max_iterations):
        assignment = np.argmin(_squared_distances(points, centroids), axis=1)
        updated = centroids.copy()
        for cluster in range(k):
            members = points[assignment == cluster]
            if len(members):
                updated[cluster] = members.mean(axis=0)
        movement = np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max()
        centroids = updated
        if movement < tolerance:
            log.debug("k-means converged after %d iterations", iteration + 1)
            break
    return centroids


def _as_matrix(features: Sequence[ItemFeature]) -> np.ndarray:
    if not features:
        raise InvalidCorpus("feature list is empty")
    dim = features[0].dim
    for feature in features:
        if feature.dim != dim:
            raise InvalidFeature("item %d: dimension %d, expected %d" % (feature.item_id, feature.dim, dim))
    return np.stack([feature.vector for feature in features])


def train_codebooks(features: Sequence[ItemFeature], m: int, sizes: Sequence[int],  # pylint:disable=invalid-name
                    seed: int, max_iterations=KMEANS_MAX_ITERATIONS, tolerance=KMEANS_TOLERANCE) -> Codebooks:
    """
    Residual k-means: level 1 clusters raw features, each next level clusters what the previous levels left.
    """
    if m < 1 or len(sizes) != m or any(size < 1 for size in sizes):
        raise InvalidCorpus("expected %d codebook sizes >= 1, got %s" % (m, list(sizes)))
    points = _as_matrix(features)
    rng = np.random.default_rng(seed)

    levels = []
    residual = points.copy()
    for level, size in enumerate(sizes):
        centroids = kmeans(residual, int(size), rng, max_iterations, tolerance)
        assignment = np.argmin(_squared_distances(residual, centroids), axis=1)
        residual = residual - centroids[assignment]
        levels.append(centroids)
        log.debug("Codebook level %d: %d codewords, mean squared residual %.6f",
                  level + 1, size, float((residual ** 2).sum(axis=1).mean()))
    return Codebooks(levels)


def residuals(points: np.ndarray, codebooks: Codebooks) -> List[np.ndarray]:
    """
    Residuals of the encoding at each level, raw points first (m + 1 arrays).
    """
    current = np.asarray(points, dtype=np.float64)
    ret = [current]
    for level in codebooks.levels:
        assignment = np.argmin(_squared_distances(current, level), axis=1)
        current = current - level[assignment]
        ret.append(current)
    return ret


def reconstruction_errors(points: np.ndarray, codebooks: Codebooks) -> List[float]:
    """
    Mean squared norm of residuals, raw points first (m + 1 values).
    """
    return [float((residual ** 2).sum(axis=1).mean()) for residual in residuals(points, codebooks)]
