# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Optional

import torch

from .candidates import CandidateSet, select_candidates, hidden_set
from .head import RankHead, SCORE_EPS
from ..model import Backbone, ForwardTrace
from ..objectives import TrainingLayout, TIERS, LossWeights, IapLosses, iap_loss, prediction_position
from ..objectives.layout import TargetKey


@dataclass(frozen=True)
class RspConfig:
    """
    Candidate widths per level, softmax temperature, and whether only the last positive target trains the head.
    """
    lambdas: Tuple[int, ...] = (16, 32)
    temperature: float = 1.0
    last_only: bool = False


@dataclass
class JointLosses:
    """
    Joint loss components. bce is None when no rank head is trained.
    """
    iap: IapLosses
    bce: Optional[torch.Tensor]
    total: torch.Tensor


def bce_loss(scored: Sequence[Tuple[torch.Tensor, torch.Tensor]]) -> torch.Tensor:
    """
    Mean binary cross entropy over every scored candidate, as (scores, labels) pairs.
    """
    scores = torch.cat([score for score, _ in scored]).clamp(SCORE_EPS, 1 - SCORE_EPS)
    labels = torch.cat([label for _, label in scored]).to(scores.dtype)
    return -(labels * torch.log(scores) + (1 - labels) * torch.log(1 - scores)).mean()


def score_targets(trace: ForwardTrace, layout: TrainingLayout, backbone: Backbone, head: RankHead,
                  config: RspConfig, keys: Sequence[TargetKey],
                  candidate_sets: Optional[List[CandidateSet]] = None) -> List[Tuple[torch.Tensor, torch.Tensor]]:
    """
    Rank head scores and labels of the top-lambda candidates of every level of every given target. The true
    codeword is appended when the model didn't select it. Scored candidate sets are appended to candidate_sets
    when given.
    """
    scored = []
    for key in keys:
        sid = layout.sids[key]
        for level in range(1, layout.m + 1):
            position = prediction_position(layout, key, level)
            candidates = select_candidates(trace.hidden[position], level, config.lambdas[level - 1],
                                           config.temperature, backbone)
            codes = list(candidates.codes)
            if sid[level - 1] not in codes:
                codes.append(sid[level - 1])
            embeddings = backbone.code_embeddings(level)[torch.tensor(codes)]
            scores = head(embeddings, hidden_set(trace, layout, position))
            candidates.rsp_scores = [float(score) for score in scores[:len(candidates)].detach()]
            if candidate_sets is not None:
                candidate_sets.append(candidates)
            labels = torch.tensor([1.0 if code == sid[level - 1] else 0.0 for code in codes], dtype=scores.dtype)
            scored.append((scores, labels))
    return scored


def rsp_keys(layout: TrainingLayout, positive_tiers: Sequence[int], last_only: bool) -> List[TargetKey]:
    """
    Targets training the rank head.
    """
    keys = [key for key in layout.target_keys if key[0] in positive_tiers]
    return keys[-1:] if last_only else keys


def total_loss(trace: ForwardTrace, layout: TrainingLayout, backbone: Backbone, head: Optional[RankHead],
               weights: LossWeights, config: RspConfig, positive_tiers: Sequence[int] = TIERS,
               keys: Optional[Sequence[TargetKey]] = None) -> JointLosses:
    """
    bce + iap. Without a rank head, only the iap loss.
    """
    iap = iap_loss(trace, layout, backbone, weights, positive_tiers, keys)
    if head is None:
        return JointLosses(iap, None, iap.total)
    if keys is None:
        keys = rsp_keys(layout, positive_tiers, config.last_only)
    if not keys:
        return JointLosses(iap, None, iap.total)
    bce = bce_loss(score_targets(trace, layout, backbone, head, config, keys))
    return JointLosses(iap, bce, bce + iap.total)
