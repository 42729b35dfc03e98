# -*- coding: utf-8 -*-
import math

import torch
from torch import nn

SCORE_EPS = 1e-7


class RankHead(nn.Module):
    """
    Target attention rank head: the candidate codeword embedding queries the sequence hidden states, the attended
    vector goes through a d -> d -> 1 GELU MLP and a sigmoid.
    """

    def __init__(self, d_model: int):
        super().__init__()
        self.d_model = d_model
        self.query = nn.Linear(d_model, d_model, bias=False)
        self.key = nn.Linear(d_model, d_model, bias=False)
        self.value = nn.Linear(d_model, d_model, bias=False)
        self.mlp = nn.Sequential(nn.Linear(d_model, d_model), nn.GELU(), nn.Linear(d_model, 1))

    def attend(self, candidates: torch.Tensor, hidden_states: torch.Tensor) -> torch.Tensor:
        """
        Attention output for each candidate embedding (C x d) over the hidden states (N x d).
        """
        if hidden_states.shape[0] == 0:
            raise ValueError("hidden state set is empty")
        query = self.query(candidates)
        key = self.key(hidden_states)
        value = self.value(hidden_states)
        weights = torch.softmax(query @ key.T / math.sqrt(self.d_model), dim=-1)
        return weights @ value

    def logits(self, candidates: torch.Tensor, hidden_states: torch.Tensor) -> torch.Tensor:
        """
        Pre-sigmoid scores (C values).
        """
        return self.mlp(self.attend(candidates, hidden_states))[:, 0]

    def forward(self, candidates: torch.Tensor,  # pylint:disable=arguments-differ
                hidden_states: torch.Tensor) -> torch.Tensor:
        """
        Scores in (0, 1), clamped away from 0 and 1.
        """
        return torch.sigmoid(self.logits(candidates, hidden_states)).clamp(SCORE_EPS, 1 - SCORE_EPS)


def build_rank_head(d_model: int, seed: int, dtype=torch.float32) -> RankHead:
    """
    Build a rank head with a seeded initialization, leaving the global torch RNG untouched.
    """
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        head = RankHead(d_model)
    return head.to(dtype)


def rank_score(candidate: torch.Tensor, hidden_states: torch.Tensor, head: RankHead) -> torch.Tensor:
    """
    Score of a single candidate embedding.
    """
    return head(candidate[None, :], hidden_states)[0]
