# -*- coding: utf-8 -*-
import math

import pytest
import torch

from sidrank.objectives import SessionSample, LossWeights, build_layout, iap_loss
from sidrank.rsp import RankHead, RspConfig, SCORE_EPS, build_rank_head, rank_score, select_candidates, \
    hidden_set, bce_loss, score_targets, total_loss
from sidrank.tokenizer import SemanticId


def sid(*codes):
    return SemanticId(codes)


def _layout(backbone):
    sample = SessionSample(0, [sid(1, 2), sid(0, 4)], {4: [sid(3, 5)], 3: [sid(2, 1)]})
    layout = build_layout(sample, backbone.config)
    return layout, backbone(layout.tokens, layout.mask, layout.positions)


class TestSelectCandidates:
    def test_top_lambda(self, double_model):
        backbone, _ = double_model
        hidden = torch.randn(8, dtype=torch.float64, generator=torch.Generator().manual_seed(1))

        candidates = select_candidates(hidden, 2, 3, 1.0, backbone)

        probs = backbone.level_distribution(hidden, 2).tolist()
        expected = sorted(range(6), key=lambda code: (-probs[code], code))[:3]
        assert candidates.codes == expected
        assert candidates.level == 2
        assert len(candidates) == 3
        assert candidates.iap_probs == pytest.approx([probs[code] for code in expected], abs=1e-12)

    def test_ties_go_to_lowest_id(self, double_model):
        backbone, _ = double_model

        candidates = select_candidates(torch.zeros(8, dtype=torch.float64), 2, 4, 1.0, backbone)

        assert candidates.codes == [0, 1, 2, 3]

    def test_lambda_larger_than_vocabulary(self, double_model):
        backbone, _ = double_model

        candidates = select_candidates(torch.zeros(8, dtype=torch.float64), 1, 10, 1.0, backbone)

        assert candidates.codes == [0, 1, 2, 3]

    def test_allowed(self, double_model):
        backbone, _ = double_model

        candidates = select_candidates(torch.zeros(8, dtype=torch.float64), 2, 2, 1.0, backbone, allowed=[5, 3, 4])

        assert candidates.codes == [3, 4]

    def test_temperature_keeps_order(self, double_model):
        backbone, _ = double_model
        hidden = torch.randn(8, dtype=torch.float64, generator=torch.Generator().manual_seed(2))

        cold = select_candidates(hidden, 2, 6, 0.5, backbone)
        warm = select_candidates(hidden, 2, 6, 2.0, backbone)

        assert cold.codes == warm.codes
        assert max(cold.iap_probs) >= max(warm.iap_probs)

    @pytest.mark.parametrize("lambda_l,temperature", [(0, 1.0), (2, 0.0)])
    def test_invalid(self, double_model, lambda_l, temperature):
        backbone, _ = double_model

        with pytest.raises(ValueError):
            select_candidates(torch.zeros(8, dtype=torch.float64), 1, lambda_l, temperature, backbone)


class TestHiddenSet:
    def test_history_position(self, double_model):
        backbone, _ = double_model
        layout, trace = _layout(backbone)

        hidden = hidden_set(trace, layout, layout.history_end)

        assert hidden.shape == (1 + 2 * 2, 8)

    def test_in_span_position(self, double_model):
        backbone, _ = double_model
        layout, trace = _layout(backbone)
        start, _ = layout.spans[(4, 0)]

        hidden = hidden_set(trace, layout, start)

        assert hidden.shape == (1 + 2 * 2 + 1, 8)
        assert torch.equal(hidden[-1], trace.hidden[start])

    def test_causal(self, double_model):
        backbone, _ = double_model
        layout, trace = _layout(backbone)

        assert hidden_set(trace, None, 3).shape == (4, 8)


def scalar_rank_score(candidate, hidden_states, head):
    def linear(layer, vector):
        weight = layer.weight.tolist()
        bias = layer.bias.tolist() if layer.bias is not None else [0.0] * len(weight)
        return [sum(w * x for w, x in zip(row, vector)) + b for row, b in zip(weight, bias)]

    query = linear(head.query, candidate)
    keys = [linear(head.key, state) for state in hidden_states]
    values = [linear(head.value, state) for state in hidden_states]
    logits = [sum(q * k for q, k in zip(query, key)) / math.sqrt(len(candidate)) for key in keys]
    top = max(logits)
    exps = [math.exp(logit - top) for logit in logits]
    weights = [value / sum(exps) for value in exps]
    attended = [sum(weight * value[i] for weight, value in zip(weights, values)) for i in range(len(candidate))]
    hidden = [0.5 * x * (1 + math.erf(x / math.sqrt(2))) for x in linear(head.mlp[0], attended)]
    output = linear(head.mlp[2], hidden)[0]
    return min(max(1 / (1 + math.exp(-output)), SCORE_EPS), 1 - SCORE_EPS)


class TestRankHead:
    def test_zero_output_layer(self, double_model):
        _, head = double_model
        with torch.no_grad():
            head.mlp[2].weight.zero_()
            head.mlp[2].bias.zero_()

        scores = head(torch.randn(3, 8, dtype=torch.float64), torch.randn(5, 8, dtype=torch.float64))

        assert scores.tolist() == [0.5, 0.5, 0.5]

    def test_single_hidden_state(self, double_model):
        _, head = double_model
        candidate = torch.randn(8, dtype=torch.float64)
        hidden = torch.randn(1, 8, dtype=torch.float64)

        attended = head.attend(candidate[None, :], hidden)

        assert torch.allclose(attended[0], head.value(hidden)[0], atol=1e-15)
        assert 0 < float(rank_score(candidate, hidden, head)) < 1

    def test_clamped(self):
        head = RankHead(4).to(torch.float64)
        with torch.no_grad():
            head.mlp[2].weight.zero_()
            head.mlp[2].bias.fill_(1000.0)

        scores = head(torch.zeros(1, 4, dtype=torch.float64), torch.zeros(2, 4, dtype=torch.float64))

        assert float(scores[0]) == 1 - SCORE_EPS

    def test_empty_hidden_set(self, double_model):
        _, head = double_model

        with pytest.raises(ValueError):
            head(torch.zeros(1, 8, dtype=torch.float64), torch.zeros(0, 8, dtype=torch.float64))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_scalar_attention(self, double_model, seed):
        _, head = double_model
        generator = torch.Generator().manual_seed(seed)
        candidate = torch.randn(8, dtype=torch.float64, generator=generator)
        hidden = torch.randn(seed + 2, 8, dtype=torch.float64, generator=generator)

        expected = scalar_rank_score(candidate.tolist(), hidden.tolist(), head)

        assert abs(float(rank_score(candidate, hidden, head)) - expected) <= 1e-10

    def test_deterministic(self):
        first = build_rank_head(8, 3)
        second = build_rank_head(8, 3)

        for name, value in first.state_dict().items():
            assert torch.equal(value, second.state_dict()[name]), name


class TestBce:
    def test_half_scores(self):
        scores = torch.full((4,), 0.5, dtype=torch.float64)
        labels = torch.tensor([1.0, 0.0, 0.0, 0.0], dtype=torch.float64)

        assert abs(float(bce_loss([(scores, labels)])) - math.log(2)) <= 1e-12

    def test_oracle(self):
        scores = torch.tensor([0.9, 0.2], dtype=torch.float64)
        labels = torch.tensor([1.0, 0.0], dtype=torch.float64)
        other = torch.tensor([0.4], dtype=torch.float64)

        loss = bce_loss([(scores, labels), (other, torch.tensor([1.0], dtype=torch.float64))])

        expected = -(math.log(0.9) + math.log(0.8) + math.log(0.4)) / 3
        assert abs(float(loss) - expected) <= 1e-12


class TestScoreTargets:
    def test_true_code_forced_in(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)
        config = RspConfig(lambdas=(1, 1))

        scored = score_targets(trace, layout, backbone, head, config, [(4, 0)])

        assert len(scored) == 2
        for level, (scores, labels) in enumerate(scored, start=1):
            assert float(labels.sum()) == 1.0
            assert 1 <= scores.shape[0] <= 2
            position = int(labels.argmax())
            candidates = select_candidates(trace.hidden[layout.history_end if level == 1 else layout.spans[(4, 0)][0]],
                                           level, 1, 1.0, backbone)
            if candidates.codes == [layout.sids[(4, 0)][level - 1]]:
                assert position == 0
            else:
                assert position == 1

    def test_candidate_count(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)

        scored = score_targets(trace, layout, backbone, head, RspConfig(lambdas=(4, 6)), [(4, 0), (3, 0)])

        assert [scores.shape[0] for scores, _ in scored] == [4, 6, 4, 6]

    def test_candidate_sets(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)
        candidate_sets = []

        scored = score_targets(trace, layout, backbone, head, RspConfig(lambdas=(2, 3)), [(4, 0), (3, 0)],
                               candidate_sets)

        assert [candidates.level for candidates in candidate_sets] == [1, 2, 1, 2]
        for candidates, (scores, _) in zip(candidate_sets, scored):
            assert len(candidates.rsp_scores) == len(candidates)
            assert candidates.rsp_scores == pytest.approx(scores[:len(candidates)].tolist(), abs=1e-15)


class TestTotalLoss:
    def test_without_head(self, double_model):
        backbone, _ = double_model
        layout, trace = _layout(backbone)

        losses = total_loss(trace, layout, backbone, None, LossWeights(), RspConfig(lambdas=(2, 2)))

        assert losses.bce is None
        assert float(losses.total) == float(losses.iap.total)

    def test_with_head(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)
        weights = LossWeights(alpha=0.5)

        losses = total_loss(trace, layout, backbone, head, weights, RspConfig(lambdas=(2, 2)))

        iap = iap_loss(trace, layout, backbone, weights)
        assert abs(float(losses.total) - float(losses.bce) - float(iap.total)) <= 1e-12

    def test_last_only(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)
        config = RspConfig(lambdas=(2, 2), last_only=True)

        losses = total_loss(trace, layout, backbone, head, LossWeights(), config)

        expected = bce_loss(score_targets(trace, layout, backbone, head, config, [(4, 0)]))
        assert abs(float(losses.bce) - float(expected)) <= 1e-12

    def test_head_receives_gradient(self, double_model):
        backbone, head = double_model
        layout, trace = _layout(backbone)

        total_loss(trace, layout, backbone, head, LossWeights(), RspConfig(lambdas=(2, 2))).total.backward()

        assert head.mlp[2].weight.grad is not None
        assert float(head.mlp[2].weight.grad.abs().sum()) > 0
