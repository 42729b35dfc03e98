# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import Tuple, List

import numpy as np

from ..errors import ConfigValidationError
from ..tokenizer import ItemFeature

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WorldConfig:  # pylint:disable=too-many-instance-attributes
    """
    Synthetic world parameters. tier_counts are the number of G4, G3, G2 and G1 items of each session.

    Exposures are drawn among the exposure_band unseen items ranked right after the clicks, pseudo-exposures among
    the pseudo_band items ranked after those. A band smaller than its tier count is widened to the count, so 0
    means contiguous ranks.
    """
    n_items: int = 2000
    n_users: int = 500
    d_latent: int = 16
    n_clusters: int = 8
    n_subclusters: int = 8
    cluster_scale: float = 4.0
    subcluster_scale: float = 1.0
    item_noise: float = 0.25
    feature_noise: float = 0.1
    user_noise: float = 0.5
    drift: float = 1.0
    affinity_noise: float = 0.5
    sessions_per_user: int = 8
    min_history: int = 4
    max_history: int = 20
    tier_counts: Tuple[int, int, int, int] = (1, 2, 3, 4)
    exposure_band: int = 20
    pseudo_band: int = 200
    seed: int = 7
    random_tiers: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, 'tier_counts', tuple(int(count) for count in self.tier_counts))
        if len(self.tier_counts) != 4 or any(count < 0 for count in self.tier_counts) or not sum(self.tier_counts):
            raise ConfigValidationError("tier_counts should be 4 counts >= 0 with a positive sum")
        if min(self.n_items, self.n_users, self.d_latent, self.n_clusters, self.n_subclusters,
               self.sessions_per_user, self.min_history) < 1:
            raise ConfigValidationError("world sizes should be >= 1")
        if self.max_history < self.min_history:
            raise ConfigValidationError("max_history should be >= min_history")
        if min(self.feature_noise, self.item_noise, self.user_noise, self.affinity_noise) < 0:
            raise ConfigValidationError("noise levels should be >= 0")
        if self.exposure_band < 0 or self.pseudo_band < 0:
            raise ConfigValidationError("exposure_band and pseudo_band should be >= 0")
        needed = self.min_history + self.sessions_per_user * sum(self.tier_counts)
        if needed > self.n_items:
            raise ConfigValidationError("%d items can't provide %d distinct items per user" % (self.n_items, needed))


@dataclass
class World:  # pylint:disable=too-many-instance-attributes
    """
    Items drawn around hierarchical cluster centers, and users with an interest drifting between two sub-clusters.
    """
    item_latents: np.ndarray
    item_features: np.ndarray
    item_clusters: np.ndarray
    item_subclusters: np.ndarray
    user_latents: np.ndarray
    user_drifts: np.ndarray

    @property
    def n_items(self) -> int:
        """
        Number of items.
        """
        return self.item_latents.shape[0]

    @property
    def n_users(self) -> int:
        """
        Number of users.
        """
        return self.user_latents.shape[0]

    def features(self) -> List[ItemFeature]:
        """
        Item features, item ids being row indices.
        """
        return [ItemFeature(item_id, vector) for item_id, vector in enumerate(self.item_features)]

    def user_latent(self, user_id: int, progress: float) -> np.ndarray:
        """
        User interest at a point in time, progress going from 0 (first session) to 1 (last session).
        """
        return self.user_latents[user_id] + progress * self.user_drifts[user_id]

    def affinity(self, user_latent: np.ndarray) -> np.ndarray:
        """
        Affinity of a user interest with every item: negative squared latent distance.
        """
        return -((self.item_latents - user_latent[None, :]) ** 2).sum(axis=1)


def generate_world(config: WorldConfig) -> World:
    """
    Draw a world. Identical configurations give identical worlds.
    """
    rng = np.random.default_rng(config.seed)
    centers = rng.normal(size=(config.n_clusters, config.d_latent)) * config.cluster_scale
    subcenters = centers[:, None, :] + rng.normal(
        size=(config.n_clusters, config.n_subclusters, config.d_latent)) * config.subcluster_scale

    clusters = rng.integers(config.n_clusters, size=config.n_items)
    subclusters = rng.integers(config.n_subclusters, size=config.n_items)
    latents = subcenters[clusters, subclusters] + rng.normal(size=(config.n_items, config.d_latent)) \
        * config.item_noise
    features = latents.copy()
    if config.feature_noise > 0:
        features = latents + rng.normal(size=latents.shape) * config.feature_noise

    user_clusters = rng.integers(config.n_clusters, size=config.n_users)
    start = rng.integers(config.n_subclusters, size=config.n_users)
    end = rng.integers(config.n_subclusters, size=config.n_users)
    user_latents = subcenters[user_clusters, start] + rng.normal(size=(config.n_users, config.d_latent)) \
        * config.user_noise
    user_drifts = (subcenters[user_clusters, end] - subcenters[user_clusters, start]) * config.drift

    log.debug("Generated %d items in %d clusters and %d users", config.n_items, config.n_clusters, config.n_users)
    return World(latents, features, clusters, subclusters, user_latents, user_drifts)
