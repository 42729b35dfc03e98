# -*- coding: utf-8 -*-
from dataclasses import dataclass, field
from typing import Tuple, Sequence, List

from ..errors import ConfigValidationError

BOS = 0
PAD = 1
SPECIAL_TOKENS = 2


@dataclass(frozen=True)
class ModelConfig:  # pylint:disable=too-many-instance-attributes
    """
    Backbone hyper parameters. Token ids are BOS, PAD, then one block of V_l ids per level.
    """
    d_model: int = 64
    n_layers: int = 2
    n_heads: int = 4
    vocab_sizes: Tuple[int, ...] = (32, 64)
    max_seq_len: int = 128
    mlp_ratio: int = 4
    layer_norm_eps: float = 1e-5
    init_std: float = 0.02
    offsets: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'vocab_sizes', tuple(int(size) for size in self.vocab_sizes))
        if self.d_model < 1 or self.n_heads < 1 or self.d_model % self.n_heads:
            raise ConfigValidationError("d_model (%d) should be divisible by n_heads (%d)"
                                        % (self.d_model, self.n_heads))
        if self.n_layers < 1:
            raise ConfigValidationError("n_layers should be >= 1")
        if not self.vocab_sizes or any(size < 1 for size in self.vocab_sizes):
            raise ConfigValidationError("vocab_sizes should hold at least one size >= 1")
        if self.max_seq_len < 1:
            raise ConfigValidationError("max_seq_len should be >= 1")
        offsets = []
        offset = SPECIAL_TOKENS
        for size in self.vocab_sizes:
            offsets.append(offset)
            offset += size
        object.__setattr__(self, 'offsets', tuple(offsets))

    @property
    def m(self) -> int:  # pylint:disable=invalid-name
        """
        Number of SID levels.
        """
        return len(self.vocab_sizes)

    @property
    def vocab_size(self) -> int:
        """
        Size of the token vocabulary, special tokens included.
        """
        return SPECIAL_TOKENS + sum(self.vocab_sizes)

    def token_id(self, level: int, code: int) -> int:
        """
        Token id of a level l codeword (l starting at 1).
        """
        if not 0 <= code < self.vocab_sizes[level - 1]:
            raise ValueError("code %d out of range for level %d" % (code, level))
        return self.offsets[level - 1] + code

    def tokens(self, codes: Sequence[int]) -> List[int]:
        """
        Token ids of a full or partial SID.
        """
        return [self.token_id(level + 1, code) for level, code in enumerate(codes)]

    def level_slice(self, level: int) -> slice:
        """
        Token id range of level l codewords.
        """
        start = self.offsets[level - 1]
        return slice(start, start + self.vocab_sizes[level - 1])
