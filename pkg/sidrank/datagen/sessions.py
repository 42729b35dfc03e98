# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import List, Dict, Iterator, Mapping, Tuple

import numpy as np

from .world import World, WorldConfig
from ..objectives import SessionSample, TIERS
from ..tokenizer import SemanticId

log = logging.getLogger(__name__)


@dataclass
class Session:
    """
    One session of a user: history item ids at session time and target item ids by tier.
    """
    user_id: int
    timestamp: int
    history: List[int]
    tiers: Dict[int, List[int]]
    holdout: bool = False

    def targets(self, tiers=TIERS) -> List[int]:
        """
        Target item ids of the given tiers.
        """
        return [item for tier in sorted(tiers, reverse=True) for item in self.tiers.get(tier, [])]


@dataclass
class SessionLog:
    """
    Every session, per user in time order. The last session of each user is held out for evaluation.
    """
    sessions: List[Session] = field(default_factory=list)

    def __iter__(self) -> Iterator[Session]:
        return iter(self.sessions)

    def __len__(self):
        return len(self.sessions)

    def train_sessions(self) -> List[Session]:
        """
        Sessions used for training.
        """
        return [session for session in self.sessions if not session.holdout]

    def holdout_sessions(self) -> List[Session]:
        """
        Sessions used for evaluation.
        """
        return [session for session in self.sessions if session.holdout]


def _band_widths(counts: Mapping[int, int], config: WorldConfig, available: int) -> List[Tuple[int, int]]:
    """
    Rank window of each tier from G4 down. Bands shrink, pseudo-exposures first, when fewer items are left.
    """
    widths = {4: counts[4], 3: counts[3], 2: max(config.exposure_band, counts[2]),
              1: max(config.pseudo_band, counts[1])}
    excess = sum(widths.values()) - available
    for tier in (1, 2):
        cut = min(max(excess, 0), widths[tier] - counts[tier])
        widths[tier] -= cut
        excess -= cut
    return [(tier, widths[tier]) for tier in (4, 3, 2, 1)]


def _user_sessions(world: World, config: WorldConfig, user_id: int) -> List[Session]:
    rng = np.random.default_rng([config.seed, user_id])
    seen = np.zeros(world.n_items, dtype=bool)

    initial = world.affinity(world.user_latent(user_id, 0.0))
    pool = np.argsort(-initial, kind="stable")[:max(config.min_history * 5, config.min_history)]
    history = [int(item) for item in rng.choice(pool, size=config.min_history, replace=False)]
    seen[history] = True

    sessions = []
    counts = dict(zip((4, 3, 2, 1), config.tier_counts))
    for timestamp in range(config.sessions_per_user):
        progress = timestamp / max(config.sessions_per_user - 1, 1)
        if config.random_tiers:
            scores = rng.random(world.n_items)
        else:
            scores = world.affinity(world.user_latent(user_id, progress))
            if config.affinity_noise > 0:
                scores = scores + rng.normal(size=world.n_items) * config.affinity_noise
        unseen = np.flatnonzero(~seen)
        ranked = unseen[np.argsort(-scores[unseen], kind="stable")]

        tiers = {}
        offset = 0
        for tier, width in _band_widths(counts, config, len(ranked)):
            picked = np.arange(width)
            if width > counts[tier]:
                picked = np.sort(rng.choice(width, size=counts[tier], replace=False))
            tiers[tier] = [int(item) for item in ranked[offset + picked]]
            offset += width
        sessions.append(Session(user_id, timestamp, history[-config.max_history:], tiers,
                                holdout=timestamp == config.sessions_per_user - 1))
        seen[[item for tier in tiers.values() for item in tier]] = True
        history = history + tiers[4] + tiers[3]
    return sessions


def generate_sessions(world: World, config: WorldConfig) -> SessionLog:
    """
    Per session, unseen items are ranked by affinity plus noise: the top ones are purchased, the next ones
    clicked. Exposures are sampled from the band ranked below the clicks, pseudo-exposures from the band below
    that. Purchases and clicks join the history.
    """
    sessions = []
    for user_id in range(world.n_users):
        sessions.extend(_user_sessions(world, config, user_id))
    log.debug("Generated %d sessions for %d users", len(sessions), world.n_users)
    return SessionLog(sessions)


def to_sample(session: Session, sids: Mapping[int, SemanticId]) -> SessionSample:
    """
    Session as a training sample of semantic ids.
    """
    return SessionSample(session.user_id, [sids[item] for item in session.history],
                         {tier: [sids[item] for item in session.tiers.get(tier, [])] for tier in TIERS},
                         session.timestamp)
