# -*- coding: utf-8 -*-
import io
import itertools
import logging
import math

import numpy as np
import pytest
import torch
from torch import nn

from sidrank.errors import EmptyHistory, LengthError
from sidrank.evaluation import RetrievalConfig
from sidrank.inference import Retriever, SidTrie, write_results, read_results, RetrievalResult
from sidrank.model import ModelConfig, build_backbone
from sidrank.rsp import RspConfig, build_rank_head
from sidrank.tokenizer import SemanticId


def sid(*codes):
    return SemanticId(codes)


def model(sizes, max_seq_len=64):
    config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=sizes, max_seq_len=max_seq_len)
    return build_backbone(config, 21, torch.float64), build_rank_head(8, 22, torch.float64)


def full_corpus(sizes):
    return {SemanticId(codes): index for index, codes in enumerate(itertools.product(*(range(s) for s in sizes)))}


HISTORY = [sid(1, 2), sid(3, 0)]


class TestSidTrie:
    def test_children(self):
        trie = SidTrie([sid(1, 2), sid(1, 0), sid(3, 3)])

        assert trie.children(()) == [1, 3]
        assert trie.children((1,)) == [0, 2]
        assert trie.children((2,)) == []


class TestBeamSearch:
    @pytest.mark.parametrize("sizes", [(4, 4), (8, 16)])
    def test_full_beams_match_brute_force(self, sizes):
        backbone, head = model(sizes)
        corpus = full_corpus(sizes)
        retriever = Retriever(backbone, head, corpus, lambdas=sizes, beams=(sizes[0], len(corpus)))

        beam = retriever.beam_search(HISTORY)
        brute = retriever.brute_force_rank(HISTORY)

        assert beam.item_ids() == brute.item_ids()
        assert len(beam) == len(corpus)
        assert [item.rsp_logscore for item in beam.items] == [item.rsp_logscore for item in brute.items]

    def test_partial_corpus(self):
        backbone, head = model((4, 4))
        corpus = {sid(0, 1): 10, sid(2, 3): 11, sid(3, 3): 12}
        retriever = Retriever(backbone, head, corpus, lambdas=(4, 4), beams=(4, 16))

        assert retriever.beam_search(HISTORY).item_ids() == retriever.brute_force_rank(HISTORY).item_ids()
        assert sorted(retriever.beam_search(HISTORY).item_ids()) == [10, 11, 12]

    def test_iap_only_matches_brute_force(self):
        backbone, _ = model((4, 4))
        corpus = full_corpus((4, 4))
        retriever = Retriever(backbone, None, corpus, lambdas=(4, 4), beams=(4, 16))

        iap = retriever.iap_only_rank(HISTORY)

        assert iap.item_ids() == retriever.brute_force_rank(HISTORY, by='iap').item_ids()
        assert all(item.rsp_logscore is None for item in iap.items)
        scores = [item.iap_logscore for item in iap.items]
        assert scores == sorted(scores, reverse=True)

    def test_first_beam_of_one(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(1, 4))

        result = retriever.beam_search(HISTORY)

        assert len(result) == 4
        assert len({item.sid[0] for item in result.items}) == 1

    def test_lambda_limits_expansions(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(2, 1), beams=(2, 16))

        assert len(retriever.beam_search(HISTORY)) == 2

    def test_constrained(self):
        backbone, head = model((4, 4))
        corpus = {sid(2, 1): 7}
        retriever = Retriever(backbone, head, corpus, lambdas=(1, 1), beams=(1, 1), constrained=True)

        result = retriever.beam_search(HISTORY)

        assert result.item_ids() == [7]
        assert result.items[0].sid == sid(2, 1)

    def test_without_head(self):
        backbone, _ = model((4, 4))
        retriever = Retriever(backbone, None, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 4))

        with pytest.raises(ValueError):
            retriever.beam_search(HISTORY)
        with pytest.raises(ValueError):
            retriever.brute_force_rank(HISTORY)

    def test_retrieve_ranker(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 8))

        assert retriever.retrieve(HISTORY).item_ids() == retriever.beam_search(HISTORY).item_ids()
        assert retriever.retrieve(HISTORY, 'iap').item_ids() == retriever.iap_only_rank(HISTORY).item_ids()

    def test_deterministic(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(2, 2), beams=(2, 4))

        assert retriever.beam_search(HISTORY).items == retriever.beam_search(HISTORY).items

    def test_empty_history(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 4))

        with pytest.raises(EmptyHistory):
            retriever.beam_search([])

    def test_long_history_keeps_latest_items(self):
        backbone, head = model((4, 4), max_seq_len=8)
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 8))
        history = [sid(0, 0), sid(1, 1), sid(2, 2), sid(3, 3), sid(0, 2)]

        assert retriever.beam_search(history).items == retriever.beam_search(history[-3:]).items

    def test_history_never_fits(self):
        backbone, head = model((4, 4), max_seq_len=2)
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 4))

        with pytest.raises(LengthError):
            retriever.beam_search([sid(0, 0)])

    def test_invalid_widths(self):
        backbone, head = model((4, 4))

        with pytest.raises(ValueError):
            Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4,), beams=(4, 4))

    def test_warns_when_beam_exceeds_expansions(self, caplog):
        backbone, head = model((4, 4))

        with caplog.at_level(logging.WARNING):
            Retriever(backbone, head, full_corpus((4, 4)), lambdas=(2, 4), beams=(4, 4))

        assert "Level 1: beam width 4 exceeds the 2 expansions of 1 beams with lambda 2" in caplog.text

    def test_warns_on_later_level(self, caplog):
        backbone, head = model((4, 4))

        with caplog.at_level(logging.WARNING):
            Retriever(backbone, head, full_corpus((4, 4)), lambdas=(2, 3), beams=(2, 7))

        assert "Level 2: beam width 7 exceeds the 6 expansions of 2 beams with lambda 3" in caplog.text

    @pytest.mark.parametrize("lambdas, beams", [((4, 4), (4, 16)), ((2, 2), (2, 4)), ((4, 2), (2, 4)),
                                                ((8, 8), (4, 16))])
    def test_no_warning_when_beams_can_fill(self, caplog, lambdas, beams):
        backbone, head = model((4, 4))

        with caplog.at_level(logging.WARNING):
            Retriever(backbone, head, full_corpus((4, 4)), lambdas=lambdas, beams=beams)

        assert "exceeds" not in caplog.text

    def test_default_widths_can_fill(self, caplog):
        config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(32, 64), max_seq_len=64)
        backbone = build_backbone(config, 0, torch.float64)
        defaults = RetrievalConfig()

        with caplog.at_level(logging.WARNING):
            Retriever(backbone, None, {}, lambdas=defaults.lambdas, beams=defaults.beams)

        assert "exceeds" not in caplog.text
        assert defaults.lambdas == RspConfig().lambdas
        assert defaults.beams[-1] >= 500


class TestCandidateSets:
    def test_candidate_sets_of_expanded_prefixes(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(2, 3), beams=(2, 6))

        result = retriever.beam_search(HISTORY)

        assert set(retriever.candidate_sets) == {()} | {item.sid.codes[:1] for item in result.items}
        for prefix, candidates in retriever.candidate_sets.items():
            assert candidates.level == len(prefix) + 1
            assert len(candidates) == (2 if not prefix else 3)
            assert candidates.iap_probs == sorted(candidates.iap_probs, reverse=True)
            assert len(candidates.rsp_scores) == len(candidates)
            assert all(0 < score < 1 for score in candidates.rsp_scores)

    def test_rsp_scores_match_items(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(4, 16))

        for item in retriever.beam_search(HISTORY).items:
            first = retriever.candidate_sets[()]
            second = retriever.candidate_sets[item.sid.codes[:1]]
            expected = math.log(first.rsp_scores[first.codes.index(item.sid[0])]) + \
                math.log(second.rsp_scores[second.codes.index(item.sid[1])])
            assert item.rsp_logscore == pytest.approx(expected, abs=1e-12)

    def test_iap_only_leaves_rsp_scores_empty(self):
        backbone, _ = model((4, 4))
        retriever = Retriever(backbone, None, full_corpus((4, 4)), lambdas=(2, 2), beams=(2, 4))

        retriever.iap_only_rank(HISTORY)

        assert retriever.candidate_sets
        assert all(candidates.rsp_scores == [] for candidates in retriever.candidate_sets.values())

    def test_reset_per_retrieval(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(1, 1), beams=(1, 1))

        retriever.beam_search(HISTORY)
        retriever.beam_search([sid(0, 0)])

        assert len(retriever.candidate_sets) == 2


class IapProbabilityHead(nn.Module):
    """
    Rank head scoring every codeword of a level by its backbone probability.
    """

    def __init__(self, backbone):
        super().__init__()
        self.backbone = backbone

    def forward(self, candidates, hidden_states):  # pylint:disable=arguments-differ
        level = self.backbone.config.vocab_sizes.index(candidates.shape[0]) + 1
        return torch.softmax(self.backbone.level_logits(hidden_states[-1], level), dim=-1)


class TestRankerConsistency:
    @pytest.mark.parametrize("history", [HISTORY, [sid(0, 5)], [sid(3, 1), sid(2, 2), sid(1, 4)]])
    def test_iap_probability_head_gives_iap_ranking(self, double_model, history):
        backbone, _ = double_model
        corpus = full_corpus((4, 6))
        retriever = Retriever(backbone, IapProbabilityHead(backbone), corpus, lambdas=(4, 6), beams=(4, 24))

        ranked = retriever.beam_search(history)
        iap = retriever.iap_only_rank(history)

        assert ranked.item_ids() == iap.item_ids()
        for rsp_item, iap_item in zip(ranked.items, iap.items):
            assert rsp_item.rsp_logscore == pytest.approx(iap_item.iap_logscore, abs=1e-10)

    def test_beam_matches_brute_force_for_random_users(self):
        sizes = (16, 16)
        backbone, head = model(sizes, max_seq_len=32)
        corpus = full_corpus(sizes)
        retriever = Retriever(backbone, head, corpus, lambdas=sizes, beams=(16, 256))
        rng = np.random.default_rng(5)

        for _ in range(10):
            history = [sid(*(int(code) for code in rng.integers(0, 16, size=2)))
                       for _ in range(int(rng.integers(1, 8)))]

            beam = retriever.beam_search(history)
            brute = retriever.brute_force_rank(history)

            assert beam.item_ids() == brute.item_ids()
            assert beam.items == brute.items


class TestResultsFile:
    def test_write_read(self):
        backbone, head = model((4, 4))
        retriever = Retriever(backbone, head, full_corpus((4, 4)), lambdas=(4, 4), beams=(2, 3))
        results = {5: retriever.beam_search(HISTORY), 2: retriever.iap_only_rank(HISTORY), 9: RetrievalResult([])}

        stream = io.StringIO()
        write_results(stream, results)
        lines = stream.getvalue().splitlines()

        assert lines[0] == "user_id\trank\titem_id\trsp_logscore\tiap_logscore"
        assert lines[1].startswith("2\t1\t")
        assert lines[1].split("\t")[3] == "NA"
        stream.seek(0)
        assert read_results(stream) == {2: results[2].item_ids(), 5: results[5].item_ids()}
