# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import Dict, Sequence, Union, List, Optional

import torch

from .layout import TrainingLayout, TIERS, TargetKey, prediction_position
from ..model import Backbone, ForwardTrace

Score = Union[float, torch.Tensor]


@dataclass(frozen=True)
class LossWeights:
    """
    Weight of the listwise preference loss (alpha) and its sharpness (beta).
    """
    alpha: float = 1.0
    beta: float = 1.0
    normalize_ldpo: bool = False

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError("alpha should be >= 0, got %s" % self.alpha)
        if not self.beta > 0:
            raise ValueError("beta should be > 0, got %s" % self.beta)


@dataclass
class LdpoResult:
    """
    Listwise preference loss value. skipped is set when no tier pair had items on both sides.
    """
    value: torch.Tensor
    skipped: bool = False


@dataclass
class IapLosses:
    """
    Loss components of the initial assessment phase.
    """
    ntp: torch.Tensor
    ldpo: LdpoResult
    total: torch.Tensor


def target_log_probs(trace: ForwardTrace, layout: TrainingLayout, key: TargetKey,
                     backbone: Backbone) -> torch.Tensor:
    """
    Log-probability of each code of one target (m values).
    """
    sid = layout.sids[key]
    values = []
    for level in range(1, layout.m + 1):
        hidden = trace.hidden[prediction_position(layout, key, level)]
        values.append(backbone.level_log_distribution(hidden, level)[sid[level - 1]])
    return torch.stack(values)


def item_score(trace: ForwardTrace, layout: TrainingLayout, key: TargetKey, backbone: Backbone) -> torch.Tensor:
    """
    Item log-score: sum over levels of the log-probability of the item codes.
    """
    return target_log_probs(trace, layout, key, backbone).sum()


def _as_tensor(score: Score) -> torch.Tensor:
    if isinstance(score, torch.Tensor):
        return score
    return torch.tensor(float(score), dtype=torch.float64)


def ldpo_loss(scores: Dict[int, Sequence[Score]], beta: float, normalize=False) -> LdpoResult:
    """
    Listwise preference loss: every item of tier j+1 should outscore all items of tiers 1..j.

    With normalize, each tier term is averaged over its items instead of summed.
    """
    terms = []
    lower = []  # type: List[torch.Tensor]
    for tier in TIERS:
        items = [_as_tensor(score) for score in scores.get(tier, ())]
        if tier > TIERS[0] and items and lower:
            scaled_lower = beta * torch.stack(lower)
            term = []
            for score in items:
                winner = beta * score
                denominator = torch.logsumexp(torch.cat([winner[None], scaled_lower]), dim=0)
                term.append(denominator - winner)
            term = torch.stack(term)
            terms.append(term.mean() if normalize else term.sum())
        lower.extend(items)
    if not terms:
        return LdpoResult(torch.zeros((), dtype=torch.float64), skipped=True)
    return LdpoResult(torch.stack(terms).sum())


def ntp_loss(trace: ForwardTrace, layout: TrainingLayout, backbone: Backbone,
             positive_tiers: Sequence[int] = TIERS, keys: Optional[Sequence[TargetKey]] = None) -> torch.Tensor:
    """
    Mean negative log-probability over every code of the positive targets. History tokens are not supervised.
    """
    if keys is None:
        keys = [key for key in layout.target_keys if key[0] in positive_tiers]
    if not keys:
        return torch.zeros((), dtype=trace.hidden.dtype)
    return -torch.cat([target_log_probs(trace, layout, key, backbone) for key in keys]).mean()


def iap_loss(trace: ForwardTrace, layout: TrainingLayout, backbone: Backbone, weights: LossWeights,
             positive_tiers: Sequence[int] = TIERS, keys: Optional[Sequence[TargetKey]] = None) -> IapLosses:
    """
    ntp + alpha * ldpo. The preference loss is left out of the graph when alpha is 0.
    """
    ntp = ntp_loss(trace, layout, backbone, positive_tiers, keys)
    if weights.alpha == 0:
        return IapLosses(ntp, LdpoResult(torch.zeros((), dtype=ntp.dtype), skipped=True), ntp)
    scores = {}
    for key in layout.target_keys:
        scores.setdefault(key[0], []).append(item_score(trace, layout, key, backbone))
    ldpo = ldpo_loss(scores, weights.beta, weights.normalize_ldpo)
    total = ntp if ldpo.skipped else ntp + weights.alpha * ldpo.value
    return IapLosses(ntp, ldpo, total)


def history_ntp_loss(trace: ForwardTrace, tokens: torch.Tensor, backbone: Backbone, m: int) -> torch.Tensor:
    """
    Next token prediction over a plain causal sequence BOS, item codes...: mean over every code token of the
    negative log-probability given all preceding tokens.
    """
    config = backbone.config
    values = []
    for position in range(1, tokens.shape[0]):
        level = (position - 1) % m + 1
        code = int(tokens[position]) - config.offsets[level - 1]
        values.append(backbone.level_log_distribution(trace.hidden[position - 1], level)[code])
    return -torch.stack(values).mean()
