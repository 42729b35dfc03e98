# -*- coding: utf-8 -*-
from dataclasses import dataclass, field
from typing import List, Dict, Tuple, Sequence, Optional

import torch

from ..model import ModelConfig, BOS, PAD, additive_mask
from ..model.backbone import pad_row_mask
from ..errors import LengthError, EmptyHistory, DimensionError
from ..tokenizer import SemanticId

TIERS = (1, 2, 3, 4)

TargetKey = Tuple[int, int]


@dataclass
class SessionSample:
    """
    One user's history SIDs and its target SIDs by preference tier (4 purchase, 3 click, 2 exposure, 1
    pseudo-exposure).
    """
    user_id: int
    history: List[SemanticId]
    tiers: Dict[int, List[SemanticId]]
    timestamp: int = 0

    def __post_init__(self):
        self.tiers = {tier: list(self.tiers.get(tier, [])) for tier in TIERS}
        if not self.history:
            raise EmptyHistory("user %d: history is empty" % self.user_id)
        if not any(self.tiers.values()):
            raise ValueError("user %d: every tier is empty" % self.user_id)

    @property
    def key(self) -> Tuple[int, int]:
        """
        Unique key of this sample.
        """
        return self.user_id, self.timestamp

    def targets(self, tiers: Sequence[int] = TIERS) -> List[Tuple[TargetKey, SemanticId]]:
        """
        Targets of the given tiers, in layout order.
        """
        return [((tier, index), sid) for tier in TIERS if tier in tiers for index, sid in enumerate(self.tiers[tier])]

    def restrict(self, tiers: Dict[int, List[SemanticId]]) -> 'SessionSample':
        """
        Same history with other targets.
        """
        return SessionSample(self.user_id, list(self.history), tiers, self.timestamp)


@dataclass(frozen=True)
class Segment:
    """
    Tag of a layout token: BOS, HISTORY, or TARGET with its (tier, index) key.
    """
    kind: str
    target: Optional[TargetKey] = None

    BOS = 'bos'
    HISTORY = 'history'
    TARGET = 'target'


@dataclass
class TrainingLayout:  # pylint:disable=too-many-instance-attributes
    """
    BOS, history SIDs, then every target SID. Targets restart their position ids right after the history,
    and only see the history and themselves.
    """
    tokens: torch.Tensor
    positions: torch.Tensor
    segments: List[Segment]
    spans: Dict[TargetKey, Tuple[int, int]]
    sids: Dict[TargetKey, SemanticId]
    history_end: int
    m: int  # pylint:disable=invalid-name
    mask: torch.Tensor = field(default=None, repr=False)

    def __len__(self):
        return self.tokens.shape[0]

    @property
    def target_keys(self) -> List[TargetKey]:
        """
        Target keys in layout order.
        """
        return list(self.spans.keys())

    def span_tokens(self, key: TargetKey) -> List[int]:
        """
        Token ids of one target span.
        """
        start, end = self.spans[key]
        return self.tokens[start:end + 1].tolist()

    def allowed(self) -> torch.Tensor:
        """
        Boolean "may attend" matrix of the layout.
        """
        length = len(self)
        group = torch.full((length,), -1, dtype=torch.long)
        for number, (start, end) in enumerate(self.spans.values()):
            group[start:end + 1] = number
        causal = torch.ones(length, length, dtype=torch.bool).tril()
        shared = group[None, :] == -1
        same_span = group[:, None] == group[None, :]
        return causal & (shared | same_span)


def layout_length(sample: SessionSample, m: int) -> int:  # pylint:disable=invalid-name
    """
    Number of tokens of a sample layout.
    """
    return 1 + m * (len(sample.history) + sum(len(targets) for targets in sample.tiers.values()))


def fit_sample(sample: SessionSample, config: ModelConfig) -> SessionSample:
    """
    Drop the oldest history items until the layout fits in max_seq_len.
    """
    history = list(sample.history)
    targets = sum(len(items) for items in sample.tiers.values())
    while history and 1 + config.m * (len(history) + targets) > config.max_seq_len:
        history.pop(0)
    if not history:
        raise LengthError("user %d: %d targets can't fit in %d tokens with any history"
                          % (sample.user_id, targets, config.max_seq_len))
    if len(history) == len(sample.history):
        return sample
    return SessionSample(sample.user_id, history, sample.tiers, sample.timestamp)


def _check_sid(sid: SemanticId, config: ModelConfig):
    if len(sid) != config.m:
        raise DimensionError("semantic id %s should have %d codes" % (sid, config.m))


def build_layout(sample: SessionSample, config: ModelConfig) -> TrainingLayout:
    """
    Flatten a sample into tokens, segments, spans and the block attention mask.
    """
    length = layout_length(sample, config.m)
    if length > config.max_seq_len:
        raise LengthError("user %d: layout of %d tokens exceeds max_seq_len %d"
                          % (sample.user_id, length, config.max_seq_len))

    tokens = [BOS]
    segments = [Segment(Segment.BOS)]
    for sid in sample.history:
        _check_sid(sid, config)
        tokens.extend(config.tokens(sid.codes))
        segments.extend([Segment(Segment.HISTORY)] * config.m)
    history_end = len(tokens) - 1
    positions = list(range(len(tokens)))

    spans = {}
    sids = {}
    for key, sid in sample.targets():
        _check_sid(sid, config)
        start = len(tokens)
        tokens.extend(config.tokens(sid.codes))
        segments.extend([Segment(Segment.TARGET, key)] * config.m)
        positions.extend(range(history_end + 1, history_end + 1 + config.m))
        spans[key] = (start, start + config.m - 1)
        sids[key] = sid

    layout = TrainingLayout(tokens=torch.tensor(tokens, dtype=torch.long),
                            positions=torch.tensor(positions, dtype=torch.long),
                            segments=segments, spans=spans, sids=sids, history_end=history_end, m=config.m)
    layout.mask = build_mask(layout)
    return layout


def build_mask(layout: TrainingLayout) -> torch.Tensor:
    """
    Additive mask: token i sees token j iff j <= i, and j is BOS or history or in the same target span as i.
    """
    return additive_mask(layout.allowed())


def build_causal_layout(history: Sequence[SemanticId], target: SemanticId, config: ModelConfig,
                        user_id=0) -> TrainingLayout:
    """
    Plain causal sequence BOS, history, one next item, used by history-only next token prediction.
    """
    sample = SessionSample(user_id, list(history), {4: [target]})
    return build_layout(sample, config)


def prediction_position(layout: TrainingLayout, key: TargetKey, level: int) -> int:
    """
    Position of the hidden state predicting the level l code of a target: last history token for level 1,
    the target's own level l-1 token otherwise.
    """
    if level == 1:
        return layout.history_end
    start, _ = layout.spans[key]
    return start + level - 2


def collate(layouts: Sequence[TrainingLayout]) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """
    Pad layouts into batched tokens, positions and masks. PAD positions only see themselves.
    """
    length = max(len(layout) for layout in layouts)
    batch = len(layouts)
    tokens = torch.full((batch, length), PAD, dtype=torch.long)
    positions = torch.zeros((batch, length), dtype=torch.long)
    allowed = torch.zeros((batch, length, length), dtype=torch.bool)
    for index, layout in enumerate(layouts):
        size = len(layout)
        tokens[index, :size] = layout.tokens
        positions[index, :size] = layout.positions
        allowed[index, :size, :size] = layout.allowed()
    return tokens, positions, additive_mask(pad_row_mask(allowed))
