# -*- coding: utf-8 -*-
import math
from dataclasses import dataclass
from typing import Optional

import torch
from torch import nn
from torch.nn import functional as F

from .config import ModelConfig, PAD
from ..errors import LengthError, DimensionError

MASKED = float('-inf')


def additive_mask(allowed: torch.Tensor, dtype=torch.float64) -> torch.Tensor:
    """
    Convert a boolean "may attend" matrix into an additive mask of 0 and -inf.
    """
    allowed = torch.as_tensor(allowed, dtype=torch.bool)
    return torch.zeros(allowed.shape, dtype=dtype).masked_fill(~allowed, MASKED)


def causal_mask(length: int, dtype=torch.float64) -> torch.Tensor:
    """
    Plain lower triangular mask.
    """
    return additive_mask(torch.ones(length, length, dtype=torch.bool).tril(), dtype)


@dataclass
class ForwardTrace:
    """
    Final hidden states of a forward pass. Activations needed for backward are held by the autograd graph.
    """
    hidden: torch.Tensor
    tokens: torch.Tensor
    mask: torch.Tensor
    positions: torch.Tensor

    @property
    def length(self) -> int:
        """
        Sequence length.
        """
        return self.hidden.shape[-2]

    def sample(self, index: int, length: Optional[int] = None) -> 'ForwardTrace':
        """
        Trace of one sample of a batched forward pass, trailing PAD positions removed.
        """
        if self.hidden.dim() != 3:
            raise DimensionError("trace is not batched")
        length = self.hidden.shape[1] if length is None else length
        return ForwardTrace(self.hidden[index, :length], self.tokens[index, :length],
                            self.mask[index, :length, :length], self.positions[index, :length])


class SelfAttention(nn.Module):
    """
    Multi head scaled dot product attention with an injected additive mask.
    """

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.n_heads = config.n_heads
        self.head_dim = config.d_model // config.n_heads
        self.qkv = nn.Linear(config.d_model, 3 * config.d_model)
        self.out = nn.Linear(config.d_model, config.d_model)

    def forward(self, inputs: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:  # pylint:disable=arguments-differ
        batch, length, d_model = inputs.shape
        query, key, value = self.qkv(inputs).split(d_model, dim=-1)
        query, key, value = (tensor.view(batch, length, self.n_heads, self.head_dim).transpose(1, 2)
                             for tensor in (query, key, value))
        logits = query @ key.transpose(-2, -1) / math.sqrt(self.head_dim) + mask[:, None, :, :]
        weights = torch.softmax(logits, dim=-1)
        attended = (weights @ value).transpose(1, 2).reshape(batch, length, d_model)
        return self.out(attended)


class Block(nn.Module):
    """
    Pre-norm transformer block.
    """

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.ln_attention = nn.LayerNorm(config.d_model, eps=config.layer_norm_eps)
        self.attention = SelfAttention(config)
        self.ln_mlp = nn.LayerNorm(config.d_model, eps=config.layer_norm_eps)
        self.mlp = nn.Sequential(nn.Linear(config.d_model, config.mlp_ratio * config.d_model),
                                 nn.GELU(),
                                 nn.Linear(config.mlp_ratio * config.d_model, config.d_model))

    def forward(self, inputs: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:  # pylint:disable=arguments-differ
        hidden = inputs + self.attention(self.ln_attention(inputs), mask)
        return hidden + self.mlp(self.ln_mlp(hidden))


class Backbone(nn.Module):
    """
    Decoder-only model over codeword tokens. The token embedding table is also the output head, sliced per level.
    """

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        self.token_embedding = nn.Embedding(config.vocab_size, config.d_model)
        self.position_embedding = nn.Embedding(config.max_seq_len, config.d_model)
        self.blocks = nn.ModuleList([Block(config) for _ in range(config.n_layers)])
        self.ln_final = nn.LayerNorm(config.d_model, eps=config.layer_norm_eps)
        self.apply(self._init_weights)

    def _init_weights(self, module: nn.Module):
        if isinstance(module, (nn.Linear, nn.Embedding)):
            nn.init.normal_(module.weight, mean=0.0, std=self.config.init_std)
            if isinstance(module, nn.Linear) and module.bias is not None:
                nn.init.zeros_(module.bias)

    @property
    def dtype(self) -> torch.dtype:
        """
        Floating point type of parameters.
        """
        return self.token_embedding.weight.dtype

    def forward(self, tokens, mask, positions=None) -> ForwardTrace:  # pylint:disable=arguments-differ
        """
        Hidden states of every position. Accepts a single sequence (L) with a L x L mask or a batch (B x L)
        with a B x L x L mask.
        """
        tokens = torch.as_tensor(tokens, dtype=torch.long)
        batched = tokens.dim() == 2
        if not batched:
            tokens = tokens[None, :]
        length = tokens.shape[1]
        if length > self.config.max_seq_len:
            raise LengthError("sequence of %d tokens exceeds max_seq_len %d" % (length, self.config.max_seq_len))

        mask = torch.as_tensor(mask).to(self.dtype)
        if mask.dim() == 2:
            mask = mask[None, :, :].expand(tokens.shape[0], length, length)
        if mask.shape != (tokens.shape[0], length, length):
            raise DimensionError("mask shape %s doesn't match tokens shape %s" % (tuple(mask.shape),
                                                                                  tuple(tokens.shape)))
        if positions is None:
            positions = torch.arange(length).expand(tokens.shape[0], length)
        else:
            positions = torch.as_tensor(positions, dtype=torch.long)
            if positions.dim() == 1:
                positions = positions[None, :].expand(tokens.shape[0], length)

        hidden = self.token_embedding(tokens) + self.position_embedding(positions)
        for block in self.blocks:
            hidden = block(hidden, mask)
        hidden = self.ln_final(hidden)

        if batched:
            return ForwardTrace(hidden, tokens, mask, positions)
        return ForwardTrace(hidden[0], tokens[0], mask[0], positions[0])

    def code_embeddings(self, level: int) -> torch.Tensor:
        """
        Embedding rows of level l codewords (V_l x d_model).
        """
        return self.token_embedding.weight[self.config.level_slice(level)]

    def level_logits(self, hidden: torch.Tensor, level: int) -> torch.Tensor:
        """
        Inner products of hidden states with level l codeword embeddings.
        """
        if not 1 <= level <= self.config.m:
            raise ValueError("level %d out of range [1, %d]" % (level, self.config.m))
        return hidden @ self.code_embeddings(level).T

    def level_distribution(self, hidden: torch.Tensor, level: int) -> torch.Tensor:
        """
        Probability of each level l codeword given a hidden state.
        """
        return torch.softmax(self.level_logits(hidden, level), dim=-1)

    def level_log_distribution(self, hidden: torch.Tensor, level: int) -> torch.Tensor:
        """
        Log-probability of each level l codeword given a hidden state.
        """
        return F.log_softmax(self.level_logits(hidden, level), dim=-1)


def build_backbone(config: ModelConfig, seed: int, dtype=torch.float32) -> Backbone:
    """
    Build a backbone with a seeded initialization, leaving the global torch RNG untouched.
    """
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        backbone = Backbone(config)
    return backbone.to(dtype)


def pad_row_mask(allowed: torch.Tensor) -> torch.Tensor:
    """
    Let a fully masked row attend to itself, so PAD positions don't produce NaN.
    """
    allowed = allowed.clone()
    empty = ~allowed.any(dim=-1)
    index = torch.arange(allowed.shape[-1])
    allowed[..., index, index] |= empty
    return allowed


__all__ = ['Backbone', 'ForwardTrace', 'build_backbone', 'additive_mask', 'causal_mask', 'pad_row_mask',
           'MASKED', 'PAD']
