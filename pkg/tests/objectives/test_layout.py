# -*- coding: utf-8 -*-
import pytest
import torch

from sidrank.errors import EmptyHistory, LengthError, DimensionError
from sidrank.model import ModelConfig, BOS, PAD, MASKED
from sidrank.objectives import SessionSample, Segment, build_layout, build_causal_layout, fit_sample, \
    prediction_position, collate
from sidrank.tokenizer import SemanticId

CONFIG = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=64)


def sid(*codes):
    return SemanticId(codes)


class TestSessionSample:
    def test_empty_history(self):
        with pytest.raises(EmptyHistory):
            SessionSample(0, [], {4: [sid(0, 0)]})

    def test_every_tier_empty(self):
        with pytest.raises(ValueError):
            SessionSample(0, [sid(0, 0)], {4: []})

    def test_targets_order(self):
        sample = SessionSample(0, [sid(0, 0)], {4: [sid(1, 1)], 2: [sid(2, 2), sid(3, 3)], 1: [sid(0, 1)]})

        assert [key for key, _ in sample.targets()] == [(1, 0), (2, 0), (2, 1), (4, 0)]
        assert [key for key, _ in sample.targets((4, 3))] == [(4, 0)]
        assert sample.tiers[3] == []

    def test_restrict(self):
        sample = SessionSample(2, [sid(0, 0)], {4: [sid(1, 1)], 1: [sid(0, 1)]}, timestamp=7)

        restricted = sample.restrict({4: [sid(1, 1)]})

        assert restricted.key == (2, 7)
        assert restricted.tiers[1] == []


class TestBuildLayout:
    def test_single_target(self):
        layout = build_layout(SessionSample(0, [sid(1, 2)], {4: [sid(3, 5)]}), CONFIG)

        assert layout.tokens.tolist() == [BOS, 3, 8, 5, 11]
        assert layout.positions.tolist() == [0, 1, 2, 3, 4]
        assert layout.spans == {(4, 0): (3, 4)}
        assert layout.history_end == 2
        assert layout.span_tokens((4, 0)) == [5, 11]
        assert layout.segments[0] == Segment(Segment.BOS)
        assert layout.segments[1] == Segment(Segment.HISTORY)
        assert layout.segments[4] == Segment(Segment.TARGET, (4, 0))

    def test_targets_restart_positions(self):
        layout = build_layout(SessionSample(0, [sid(1, 2)], {4: [sid(3, 5)], 3: [sid(0, 0)]}), CONFIG)

        assert layout.spans == {(3, 0): (3, 4), (4, 0): (5, 6)}
        assert layout.positions.tolist() == [0, 1, 2, 3, 4, 3, 4]

    def test_mask(self):
        layout = build_layout(SessionSample(0, [sid(1, 2)], {4: [sid(3, 5)], 3: [sid(0, 0)]}), CONFIG)
        allowed = layout.allowed()

        for i in range(len(layout)):
            for j in range(len(layout)):
                shared = j <= layout.history_end
                same = layout.segments[i] == layout.segments[j] and layout.segments[i].kind == Segment.TARGET
                assert bool(allowed[i, j]) == (j <= i and (shared or same)), (i, j)
        assert layout.mask[5, 3] == MASKED
        assert layout.mask[6, 5] == 0.0

    def test_too_long(self):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=6)

        with pytest.raises(LengthError):
            build_layout(SessionSample(0, [sid(1, 2), sid(0, 0)], {4: [sid(3, 5)]}), config)

    def test_wrong_sid_length(self):
        with pytest.raises(DimensionError):
            build_layout(SessionSample(0, [sid(1, 2, 0)], {4: [sid(3, 5)]}), CONFIG)

    def test_causal_layout(self):
        layout = build_causal_layout([sid(1, 2), sid(0, 0)], sid(3, 5), CONFIG)

        assert layout.tokens.tolist() == [BOS, 3, 8, 2, 6, 5, 11]
        assert layout.positions.tolist() == list(range(7))


class TestPredictionPosition:
    def test_levels(self):
        layout = build_layout(SessionSample(0, [sid(1, 2)], {4: [sid(3, 5)], 3: [sid(0, 0)]}), CONFIG)

        assert prediction_position(layout, (3, 0), 1) == 2
        assert prediction_position(layout, (4, 0), 1) == 2
        assert prediction_position(layout, (3, 0), 2) == 3
        assert prediction_position(layout, (4, 0), 2) == 5


class TestFitSample:
    def test_drops_oldest(self):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=7)
        sample = SessionSample(0, [sid(0, 0), sid(1, 1), sid(2, 2)], {4: [sid(3, 5)]})

        fitted = fit_sample(sample, config)

        assert fitted.history == [sid(1, 1), sid(2, 2)]

    def test_unchanged(self):
        sample = SessionSample(0, [sid(0, 0)], {4: [sid(3, 5)]})

        assert fit_sample(sample, CONFIG) is sample

    def test_no_room(self):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=4)

        with pytest.raises(LengthError):
            fit_sample(SessionSample(0, [sid(0, 0)], {4: [sid(3, 5)]}), config)


class TestCollate:
    def test_padding(self):
        short = build_layout(SessionSample(0, [sid(1, 2)], {4: [sid(3, 5)]}), CONFIG)
        long = build_layout(SessionSample(1, [sid(1, 2), sid(0, 0)], {4: [sid(3, 5)]}), CONFIG)

        tokens, positions, mask = collate([short, long])

        assert tokens.shape == (2, 7)
        assert tokens[0].tolist() == short.tokens.tolist() + [PAD, PAD]
        assert positions[1].tolist() == long.positions.tolist()
        assert torch.equal(mask[0, :5, :5], short.mask)
        assert mask[0, 5, 5] == 0.0
        assert mask[0, 5, 4] == MASKED
        assert mask[0, 4, 5] == MASKED
        assert torch.equal(mask[1], long.mask)
