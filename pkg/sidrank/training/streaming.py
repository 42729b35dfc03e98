# -*- coding: utf-8 -*-
import copy
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, List

from .trainer import Trainer
from ..model import Backbone
from ..objectives import SessionSample
from ..rsp import RankHead

log = logging.getLogger(__name__)


@dataclass
class ModelSnapshot:
    """
    Frozen copy of the trained modules, as served after a model sync.
    """
    version: int
    backbone: Backbone
    head: Optional[RankHead]


class StreamingTrainer:
    """
    Incremental trainer fed by ingested samples. Pending samples are consumed by optimizer steps, and snapshot()
    publishes a new model version.
    """

    def __init__(self, trainer: Trainer, max_steps_per_update: int = 50):
        self.trainer = trainer
        self.max_steps_per_update = max_steps_per_update
        self.pending = 0
        self.version = 0
        self.snapshots = [self._copy()]  # type: List[ModelSnapshot]

    def _copy(self) -> ModelSnapshot:
        backbone = copy.deepcopy(self.trainer.backbone).eval()
        head = copy.deepcopy(self.trainer.head).eval() if self.trainer.head is not None else None
        return ModelSnapshot(self.version, backbone, head)

    def ingest(self, samples: Sequence[SessionSample]):
        """
        Queue samples for the next update.
        """
        self.trainer.add_samples(samples)
        self.pending += len(samples)

    def update(self) -> int:
        """
        Run enough optimizer steps to go through pending samples once, capped by max_steps_per_update.
        """
        if not self.pending:
            return 0
        steps = min(math.ceil(self.pending / self.trainer.config.batch_size), self.max_steps_per_update)
        for _ in range(steps):
            self.trainer.step()
        self.pending = 0
        return steps

    def snapshot(self) -> ModelSnapshot:
        """
        Train on pending samples, then publish a new model version.
        """
        steps = self.update()
        self.version += 1
        snapshot = self._copy()
        self.snapshots.append(snapshot)
        log.debug("Model version %d published after %d steps", self.version, steps)
        return snapshot

    @property
    def current(self) -> ModelSnapshot:
        """
        Last published snapshot.
        """
        return self.snapshots[-1]
