# -*- coding: utf-8 -*-
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import torch

from ..model import Backbone, ForwardTrace
from ..objectives import TrainingLayout


@dataclass
class CandidateSet:
    """
    Top-lambda codewords of one level, by decreasing probability.
    """
    level: int
    codes: List[int]
    iap_probs: List[float]
    rsp_scores: List[float] = field(default_factory=list)

    def __len__(self):
        return len(self.codes)


def select_candidates(hidden: torch.Tensor, level: int, lambda_l: int, temperature: float, backbone: Backbone,
                      allowed: Optional[Sequence[int]] = None) -> CandidateSet:
    """
    Keep the lambda_l most probable level l codewords under a tempered softmax. Ties go to the lowest id.
    When allowed is given, only those codewords are considered.
    """
    if lambda_l < 1:
        raise ValueError("lambda should be >= 1, got %d" % lambda_l)
    if not temperature > 0:
        raise ValueError("temperature should be > 0, got %s" % temperature)
    with torch.no_grad():
        probs = torch.softmax(backbone.level_logits(hidden, level) / temperature, dim=-1).cpu().numpy()
    ids = np.arange(probs.shape[0]) if allowed is None else np.array(sorted(allowed), dtype=np.int64)
    order = ids[np.lexsort((ids, -probs[ids]))][:lambda_l]
    return CandidateSet(level, [int(code) for code in order], [float(probs[code]) for code in order])


def hidden_set(trace: ForwardTrace, layout: Optional[TrainingLayout], position: int) -> torch.Tensor:
    """
    Hidden states visible from a position, itself included. Without a layout, the sequence is plain causal.
    """
    if layout is None:
        return trace.hidden[:position + 1]
    visible = layout.allowed()[position, :position + 1].nonzero()[:, 0]
    return trace.hidden[visible]
