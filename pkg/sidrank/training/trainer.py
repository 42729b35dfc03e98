# -*- coding: utf-8 -*-
import hashlib
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import List, Sequence, Optional, Dict, TextIO, Tuple

import numpy as np
import pandas as pd
import torch
from progress.bar import IncrementalBar
from verboselogs import VERBOSE

from .variants import Variant
from ..event import events
from ..model import ModelConfig, Backbone, build_backbone
from ..objectives import SessionSample, TIERS, LossWeights, build_layout, build_causal_layout, fit_sample, collate, \
    history_ntp_loss, TrainingLayout
from ..objectives.layout import TargetKey
from ..rsp import RankHead, RspConfig, build_rank_head, total_loss, bce_loss, score_targets

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:  # pylint:disable=too-many-instance-attributes
    """
    Optimization settings. The learning rate decays linearly to 0 over steps. The first warmup_steps steps train
    plain next token prediction over the history, with the rank head when there is one, whatever the variant.
    """
    steps: int = 300
    batch_size: int = 16
    learning_rate: float = 0.05
    momentum: float = 0.9
    alpha: float = 1.0
    beta: float = 0.1
    normalize_ldpo: bool = True
    positive_tiers: Tuple[int, ...] = TIERS
    warmup_steps: int = 100
    rsp_last_only: bool = False
    log_every: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'positive_tiers', tuple(sorted(set(self.positive_tiers))))


@dataclass
class LossRecord:
    """
    Mean losses of one optimizer step.
    """
    step: int
    learning_rate: float
    losses: Dict[str, float]


@dataclass
class TrainingRun:
    """
    Trained modules, the loss log and the digest of every batch.
    """
    backbone: Backbone
    head: Optional[RankHead]
    loss_log: List[LossRecord] = field(default_factory=list)
    batch_digests: List[str] = field(default_factory=list)


def batch_digest(samples: Sequence[SessionSample]) -> str:
    """
    Digest of the sample keys of a batch.
    """
    keys = "\n".join("%d:%d" % sample.key for sample in samples)
    return hashlib.sha256(keys.encode("utf-8")).hexdigest()[:16]


def single_positive(sample: SessionSample) -> TargetKey:
    """
    First item of the highest non empty tier.
    """
    for tier in reversed(TIERS):
        if sample.tiers[tier]:
            return tier, 0
    raise ValueError("user %d: every tier is empty" % sample.user_id)


class Trainer:  # pylint:disable=too-many-instance-attributes
    """
    SGD with momentum over batches of session samples, for one model variant.

    Batches only depend on the seed and the samples, so every variant sees the same batches.
    """

    def __init__(self, model_config: ModelConfig, train_config: TrainConfig, rsp_config: RspConfig, variant: Variant,
                 samples: Sequence[SessionSample], backbone: Optional[Backbone] = None,
                 head: Optional[RankHead] = None, dtype=torch.float32, decay=True):
        self.model_config = model_config
        self.config = train_config
        self.rsp_config = RspConfig(rsp_config.lambdas, rsp_config.temperature, train_config.rsp_last_only)
        self.variant = variant
        self.samples = list(samples)
        self.backbone = backbone if backbone is not None else build_backbone(model_config, train_config.seed, dtype)
        if variant.rsp:
            self.head = head if head is not None else build_rank_head(model_config.d_model, train_config.seed + 1,
                                                                      dtype)
        else:
            self.head = None
        self.weights = LossWeights(variant.alpha(train_config.alpha), train_config.beta, train_config.normalize_ldpo)
        self.step_count = 0
        self.loss_log = []  # type: List[LossRecord]
        self.batch_digests = []  # type: List[str]
        self._rng = np.random.default_rng([train_config.seed, 1])
        self._order = []  # type: List[int]
        self.optimizer = torch.optim.SGD(self.parameters(), lr=train_config.learning_rate,
                                         momentum=train_config.momentum)
        total = max(train_config.steps, 1)
        self.scheduler = torch.optim.lr_scheduler.LambdaLR(self.optimizer,
                                                           (lambda step: max(1.0 - step / total, 0.0)) if decay
                                                           else (lambda step: 1.0))

    def parameters(self) -> List[torch.nn.Parameter]:
        """
        Trained parameters.
        """
        parameters = list(self.backbone.parameters())
        if self.head is not None:
            parameters.extend(self.head.parameters())
        return parameters

    def add_samples(self, samples: Sequence[SessionSample]):
        """
        Make more samples available to following batches.
        """
        self.samples.extend(samples)

    def next_batch(self) -> List[SessionSample]:
        """
        Next batch, walking through shuffled epochs of the samples.
        """
        if not self.samples:
            raise ValueError("no training sample")
        size = min(self.config.batch_size, len(self.samples))
        batch = []
        while len(batch) < size:
            if not self._order:
                self._order = [int(index) for index in self._rng.permutation(len(self.samples))]
            batch.append(self.samples[self._order.pop(0)])
        return batch

    def _history_ntp_losses(self, batch: Sequence[SessionSample]) -> Dict[str, torch.Tensor]:
        layouts = []
        for sample in batch:
            tier, index = single_positive(sample)
            fitted = fit_sample(sample.restrict({tier: [sample.tiers[tier][index]]}), self.model_config)
            layouts.append(build_causal_layout(fitted.history, fitted.tiers[tier][0], self.model_config,
                                               sample.user_id))
        traces = self._forward(layouts)
        ntp = torch.stack([history_ntp_loss(trace, layout.tokens, self.backbone, self.model_config.m)
                           for trace, layout in zip(traces, layouts)]).mean()
        ret = OrderedDict([("loss", ntp), ("ntp", ntp)])
        if self.head is not None:
            bce = torch.stack([bce_loss(score_targets(trace, layout, self.backbone, self.head, self.rsp_config,
                                                      layout.target_keys))
                               for trace, layout in zip(traces, layouts)]).mean()
            ret["loss"] = ntp + bce
            ret["bce"] = bce
        return ret

    def _forward(self, layouts: Sequence[TrainingLayout]):
        tokens, positions, mask = collate(layouts)
        trace = self.backbone(tokens, mask, positions)
        return [trace.sample(index, len(layout)) for index, layout in enumerate(layouts)]

    def _joint_losses(self, batch: Sequence[SessionSample]) -> Dict[str, torch.Tensor]:
        layouts = [build_layout(fit_sample(sample, self.model_config), self.model_config) for sample in batch]
        traces = self._forward(layouts)
        totals, ntps, ldpos, bces = [], [], [], []
        for layout, trace in zip(layouts, traces):
            losses = total_loss(trace, layout, self.backbone, self.head, self.weights, self.rsp_config,
                                self.config.positive_tiers)
            totals.append(losses.total)
            ntps.append(losses.iap.ntp)
            ldpos.append(losses.iap.ldpo.value.to(losses.total.dtype))
            if losses.bce is not None:
                bces.append(losses.bce)
        ret = OrderedDict([("loss", torch.stack(totals).mean()), ("ntp", torch.stack(ntps).mean())])
        if self.weights.alpha > 0:
            ret["ldpo"] = torch.stack(ldpos).mean()
        if self.head is not None and bces:
            ret["bce"] = torch.stack(bces).mean()
        return ret

    def losses(self, batch: Sequence[SessionSample]) -> Dict[str, torch.Tensor]:
        """
        Mean loss components of a batch, "loss" being the optimized one.
        """
        if self.variant.history_ntp or self.step_count < self.config.warmup_steps:
            return self._history_ntp_losses(batch)
        return self._joint_losses(batch)

    def step(self) -> LossRecord:
        """
        Apply one optimizer step.
        """
        batch = self.next_batch()
        self.batch_digests.append(batch_digest(batch))
        learning_rate = self.optimizer.param_groups[0]["lr"]

        self.optimizer.zero_grad()
        losses = self.losses(batch)
        losses["loss"].backward()
        self.optimizer.step()
        self.scheduler.step()
        self.step_count += 1

        values = OrderedDict([("alpha", self.weights.alpha)])
        values.update((name, float(value.detach())) for name, value in losses.items())
        record = LossRecord(self.step_count, learning_rate, values)
        self.loss_log.append(record)
        events.train.step(step=record.step, learning_rate=learning_rate, losses=dict(values))
        if self.config.log_every and record.step % self.config.log_every == 0:
            log.log(VERBOSE, "step %d lr=%.5f %s", record.step, learning_rate,
                    " ".join("%s=%.5f" % item for item in values.items()))
        return record

    def train(self, steps: Optional[int] = None, show_progress=False) -> TrainingRun:
        """
        Run steps optimizer steps (the configured count by default).
        """
        steps = self.config.steps if steps is None else steps
        progress_bar = IncrementalBar('Training', max=steps, suffix='%(index)d/%(max)d') \
            if show_progress and steps else None
        for _ in range(steps):
            self.step()
            if progress_bar:
                progress_bar.next()  # pylint:disable=not-callable
        if progress_bar:
            progress_bar.finish()
        if steps:
            events.train.done(steps=self.step_count, losses=dict(self.loss_log[-1].losses))
        return TrainingRun(self.backbone, self.head, list(self.loss_log), list(self.batch_digests))


def write_loss_log(stream: TextIO, records: Sequence[LossRecord]):
    """
    Write the loss log as a tab separated table, one row per step. Losses missing from a step, as during
    warm-up, are left empty.
    """
    rows = [OrderedDict([("step", record.step), ("lr", record.learning_rate)] + list(record.losses.items()))
            for record in records]
    columns = ["step", "lr"]
    for row in rows:
        columns.extend(name for name in row if name not in columns)
    frame = pd.DataFrame(rows, columns=columns)
    frame.to_csv(stream, sep="\t", index=False, float_format="%.6f", lineterminator="\n")
