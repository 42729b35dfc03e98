# -*- coding: utf-8 -*-
import math

import pytest
import torch

from sidrank.errors import LengthError, ConfigValidationError
from sidrank.model import ModelConfig, BOS, build_backbone, causal_mask, MASKED
from sidrank.model.backbone import additive_mask, pad_row_mask
from sidrank.objectives import SessionSample, build_layout
from sidrank.tokenizer import SemanticId


def _sample():
    return SessionSample(0, [SemanticId((1, 2)), SemanticId((3, 0))],
                         {4: [SemanticId((0, 5))], 3: [SemanticId((2, 1))]})


class TestModelConfig:
    def test_token_ids(self):
        config = ModelConfig(vocab_sizes=(4, 6))

        assert config.vocab_size == 12
        assert config.offsets == (2, 6)
        assert config.tokens((3, 0)) == [5, 6]
        assert config.level_slice(2) == slice(6, 12)

    def test_invalid_code(self):
        with pytest.raises(ValueError):
            ModelConfig(vocab_sizes=(4, 6)).token_id(1, 4)

    def test_heads_divide_width(self):
        with pytest.raises(ConfigValidationError):
            ModelConfig(d_model=10, n_heads=4)


class TestForward:
    def test_single_bos(self, double_model):
        backbone, _ = double_model

        trace = backbone(torch.tensor([BOS]), causal_mask(1))

        assert trace.hidden.shape == (1, 8)
        assert torch.isfinite(trace.hidden).all()

    def test_too_long(self, double_model):
        backbone, _ = double_model

        with pytest.raises(LengthError):
            backbone(torch.zeros(65, dtype=torch.long), causal_mask(65))

    def test_block_mask_equals_causal_with_single_target(self, double_model):
        backbone, _ = double_model
        sample = SessionSample(0, [SemanticId((1, 2)), SemanticId((3, 0))], {4: [SemanticId((0, 5))]})
        layout = build_layout(sample, backbone.config)

        block = backbone(layout.tokens, layout.mask, layout.positions)
        causal = backbone(layout.tokens, causal_mask(len(layout)))

        assert torch.equal(layout.mask, causal_mask(len(layout)))
        assert (block.hidden - causal.hidden).abs().max() <= 1e-12

    def test_perturbation_respects_mask(self, double_model):
        backbone, _ = double_model
        layout = build_layout(_sample(), backbone.config)
        start, end = layout.spans[(4, 0)]
        other_start, other_end = layout.spans[(3, 0)]

        tokens = layout.tokens.clone()
        tokens[start] = backbone.config.token_id(1, 3)
        original = backbone(layout.tokens, layout.mask, layout.positions).hidden
        perturbed = backbone(tokens, layout.mask, layout.positions).hidden

        assert torch.equal(original[:start], perturbed[:start])
        assert torch.equal(original[other_start:other_end + 1], perturbed[other_start:other_end + 1])
        assert not torch.equal(original[start:end + 1], perturbed[start:end + 1])

    def test_batched_matches_single(self, double_model):
        backbone, _ = double_model
        layout = build_layout(_sample(), backbone.config)

        single = backbone(layout.tokens, layout.mask, layout.positions).hidden
        batched = backbone(layout.tokens[None, :], layout.mask[None, :, :], layout.positions[None, :])

        assert (batched.sample(0).hidden - single).abs().max() <= 1e-12

    def test_deterministic(self):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=16)

        first = build_backbone(config, 5)
        second = build_backbone(config, 5)

        for (name, first_value), (_, second_value) in zip(first.state_dict().items(), second.state_dict().items()):
            assert torch.equal(first_value, second_value), name


class TestLevelDistribution:
    def test_zero_hidden_is_uniform(self, double_model):
        backbone, _ = double_model

        for level, size in ((1, 4), (2, 6)):
            probs = backbone.level_distribution(torch.zeros(8, dtype=torch.float64), level)
            assert torch.allclose(probs, torch.full((size,), 1.0 / size, dtype=torch.float64), atol=1e-15)

    def test_single_codeword(self):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(1, 3), max_seq_len=16)
        backbone = build_backbone(config, 0, torch.float64)

        probs = backbone.level_distribution(torch.randn(8, dtype=torch.float64), 1)

        assert probs.tolist() == [1.0]

    def test_softmax_oracle(self, double_model):
        backbone, _ = double_model
        hidden = torch.randn(8, dtype=torch.float64, generator=torch.Generator().manual_seed(0))

        probs = backbone.level_distribution(hidden, 1)

        embeddings = backbone.token_embedding.weight.detach()
        logits = [sum(float(hidden[i]) * float(embeddings[2 + code, i]) for i in range(8)) for code in range(4)]
        total = sum(math.exp(logit) for logit in logits)
        for code in range(4):
            assert abs(float(probs[code]) - math.exp(logits[code]) / total) <= 1e-12
        assert abs(float(probs.sum()) - 1.0) <= 1e-9

    def test_invalid_level(self, double_model):
        backbone, _ = double_model

        with pytest.raises(ValueError):
            backbone.level_distribution(torch.zeros(8, dtype=torch.float64), 3)


class TestMasks:
    def test_additive_mask(self):
        mask = additive_mask(torch.tensor([[True, False], [True, True]]))

        assert mask.tolist() == [[0.0, MASKED], [0.0, 0.0]]

    def test_pad_row_sees_itself(self):
        allowed = torch.tensor([[True, False], [False, False]])

        assert pad_row_mask(allowed).tolist() == [[True, False], [False, True]]
