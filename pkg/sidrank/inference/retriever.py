# -*- coding: utf-8 -*-
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple, Sequence, Optional, Iterable, TextIO

import numpy as np
import pandas as pd
import torch

from .trie import SidTrie
from ..errors import EmptyHistory, LengthError
from ..model import Backbone, BOS, causal_mask
from ..rsp import RankHead, CandidateSet, select_candidates
from ..tokenizer import SemanticId

log = logging.getLogger(__name__)

Prefix = Tuple[int, ...]


@dataclass(frozen=True)
class BeamCandidate:
    """
    Partial semantic id with cumulated rank head and IAP log-scores.
    """
    prefix: Prefix
    rsp_logscore: float = 0.0
    iap_logscore: float = 0.0


@dataclass(frozen=True)
class RetrievedItem:
    """
    One retrieved item. rsp_logscore is None when the rank head wasn't used.
    """
    item_id: int
    sid: SemanticId
    rsp_logscore: Optional[float]
    iap_logscore: float


@dataclass
class RetrievalResult:
    """
    Ranked retrieved items.
    """
    items: List[RetrievedItem]

    def item_ids(self, k: Optional[int] = None) -> List[int]:
        """
        Item ids of the top k items (all when k is None).
        """
        items = self.items if k is None else self.items[:k]
        return [item.item_id for item in items]

    def __len__(self):
        return len(self.items)


@dataclass
class _PrefixState:
    hidden: torch.Tensor
    hidden_states: torch.Tensor
    log_probs: np.ndarray


class Retriever:  # pylint:disable=too-many-instance-attributes
    """
    Two stage decoding of semantic ids: at each level the backbone keeps the top-lambda codewords of every
    beam, the rank head scores them, and the best B expansions survive.

    Results are sorted by rank score, then IAP score, then semantic id. Each prefix is run through the backbone
    once per retrieval; candidates are scored in codeword id order so every ranker computes identical floats.
    candidate_sets holds the candidate set of every prefix expanded by the last beam search.
    """

    def __init__(self, backbone: Backbone, head: Optional[RankHead], corpus: Dict[SemanticId, int],
                 lambdas: Sequence[int], beams: Sequence[int], temperature=1.0, fuse=False, constrained=False):
        self.backbone = backbone
        self.head = head
        self.corpus = dict(corpus)
        self.lambdas = tuple(lambdas)
        self.beams = tuple(beams)
        self.temperature = temperature
        self.fuse = fuse
        self.constrained = constrained
        self.config = backbone.config
        self.trie = SidTrie(self.corpus.keys())
        self._states = {}  # type: Dict[Prefix, _PrefixState]
        self._rank_scores = {}  # type: Dict[Prefix, np.ndarray]
        self.candidate_sets = {}  # type: Dict[Prefix, CandidateSet]
        self._history_tokens = []  # type: List[int]
        if len(self.lambdas) != self.config.m or len(self.beams) != self.config.m:
            raise ValueError("expected %d lambdas and beams, got %s and %s"
                             % (self.config.m, list(self.lambdas), list(self.beams)))
        previous = 1
        for level, (lambda_l, beam) in enumerate(zip(self.lambdas, self.beams), start=1):
            available = previous * min(lambda_l, self.config.vocab_sizes[level - 1])
            if beam > available:
                log.warning("Level %d: beam width %d exceeds the %d expansions of %d beams with lambda %d",
                            level, beam, available, previous, lambda_l)
            previous = min(beam, available)

    def _start(self, history: Sequence[SemanticId]):
        if not history:
            raise EmptyHistory("retrieval needs a non empty history")
        tokens = [BOS]
        for sid in history:
            tokens.extend(self.config.tokens(sid.codes))
        # Room for the m - 1 decoded codes.
        overflow = len(tokens) + self.config.m - 1 - self.config.max_seq_len
        if overflow > 0:
            items = -(-overflow // self.config.m)
            if items >= len(history):
                raise LengthError("history can't fit in max_seq_len %d" % self.config.max_seq_len)
            return self._start(history[items:])
        self._history_tokens = tokens
        self._states = {}
        self._rank_scores = {}
        self.candidate_sets = {}
        return None

    def _state(self, prefix: Prefix) -> _PrefixState:
        if prefix not in self._states:
            tokens = self._history_tokens + self.config.tokens(prefix)
            level = len(prefix) + 1
            with torch.no_grad():
                trace = self.backbone(torch.tensor(tokens), causal_mask(len(tokens)))
                hidden = trace.hidden[-1]
                logits = self.backbone.level_logits(hidden, level)
                log_probs = torch.log_softmax(logits, dim=-1).cpu().numpy().astype(np.float64)
            self._states[prefix] = _PrefixState(hidden, trace.hidden, log_probs)
        return self._states[prefix]

    def _rank_logscores(self, prefix: Prefix, codes: Sequence[int]) -> np.ndarray:
        """
        log s of the given codes after a prefix. The rank head runs once per prefix over every codeword.
        """
        if prefix not in self._rank_scores:
            state = self._state(prefix)
            level = len(prefix) + 1
            with torch.no_grad():
                embeddings = self.backbone.code_embeddings(level)
                scores = self.head(embeddings, state.hidden_states)
            self._rank_scores[prefix] = np.log(scores.cpu().numpy().astype(np.float64))
        return self._rank_scores[prefix][list(codes)]

    def _sort_key(self, candidate: BeamCandidate, use_rank: bool):
        if use_rank:
            score = candidate.rsp_logscore + (candidate.iap_logscore if self.fuse else 0.0)
        else:
            score = candidate.iap_logscore
        return -score, -candidate.iap_logscore, candidate.prefix

    def _allowed(self, prefix: Prefix) -> Optional[List[int]]:
        return self.trie.children(prefix) if self.constrained else None

    def _finish(self, candidates: Iterable[BeamCandidate], use_rank: bool) -> RetrievalResult:
        items = []
        for candidate in candidates:
            sid = SemanticId(candidate.prefix)
            if sid in self.corpus:
                items.append(RetrievedItem(self.corpus[sid], sid,
                                           candidate.rsp_logscore if use_rank else None, candidate.iap_logscore))
        return RetrievalResult(items)

    def _decode(self, history: Sequence[SemanticId], use_rank: bool) -> RetrievalResult:
        self._start(history)
        beams = [BeamCandidate(())]
        for level in range(1, self.config.m + 1):
            expansions = []
            for beam in beams:
                state = self._state(beam.prefix)
                allowed = self._allowed(beam.prefix)
                if allowed is not None and not allowed:
                    continue
                candidates = select_candidates(state.hidden, level, self.lambdas[level - 1], self.temperature,
                                               self.backbone, allowed)
                codes = sorted(candidates.codes)
                rank = self._rank_logscores(beam.prefix, codes) if use_rank else np.zeros(len(codes))
                if use_rank:
                    by_code = dict(zip(codes, rank))
                    candidates.rsp_scores = [float(np.exp(by_code[code])) for code in candidates.codes]
                self.candidate_sets[beam.prefix] = candidates
                for code, rank_logscore in zip(codes, rank):
                    expansions.append(BeamCandidate(beam.prefix + (code,),
                                                    beam.rsp_logscore + float(rank_logscore),
                                                    beam.iap_logscore + float(state.log_probs[code])))
            expansions.sort(key=lambda candidate: self._sort_key(candidate, use_rank))
            beams = expansions[:self.beams[level - 1]]
        return self._finish(beams, use_rank)

    def beam_search(self, history: Sequence[SemanticId]) -> RetrievalResult:
        """
        Rank head driven beam search.
        """
        if self.head is None:
            raise ValueError("beam_search needs a rank head, use iap_only_rank instead")
        return self._decode(history, use_rank=True)

    def iap_only_rank(self, history: Sequence[SemanticId]) -> RetrievalResult:
        """
        Same beam search, ranked by IAP log-scores only. The rank head is not used.
        """
        return self._decode(history, use_rank=False)

    def brute_force_rank(self, history: Sequence[SemanticId], by='rsp') -> RetrievalResult:
        """
        Score every corpus item exactly and sort. by is "rsp" or "iap".
        """
        use_rank = by == 'rsp'
        if use_rank and self.head is None:
            raise ValueError("rsp ranking needs a rank head")
        self._start(history)
        candidates = []
        for sid in self.corpus:
            rsp_logscore = 0.0
            iap_logscore = 0.0
            for level in range(1, self.config.m + 1):
                prefix = sid.codes[:level - 1]
                code = sid[level - 1]
                iap_logscore += float(self._state(prefix).log_probs[code])
                if use_rank:
                    rsp_logscore += float(self._rank_logscores(prefix, [code])[0])
            candidates.append(BeamCandidate(sid.codes, rsp_logscore, iap_logscore))
        candidates.sort(key=lambda candidate: self._sort_key(candidate, use_rank))
        return self._finish(candidates, use_rank)

    def retrieve(self, history: Sequence[SemanticId], ranker='rsp') -> RetrievalResult:
        """
        Beam search with the given ranker ("rsp" or "iap").
        """
        if ranker == 'rsp':
            return self.beam_search(history)
        return self.iap_only_rank(history)


def _format_score(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return "NA"
    return "%.6f" % value


def write_results(stream: TextIO, results: Dict[int, RetrievalResult]):
    """
    Write one "user_id rank item_id rsp_logscore iap_logscore" line per retrieved item, ranks starting at 1.
    """
    stream.write("user_id\trank\titem_id\trsp_logscore\tiap_logscore\n")
    for user_id in sorted(results):
        for rank, item in enumerate(results[user_id].items, start=1):
            stream.write("%d\t%d\t%d\t%s\t%s\n" % (user_id, rank, item.item_id, _format_score(item.rsp_logscore),
                                                 _format_score(item.iap_logscore)))


def read_results(stream: TextIO) -> Dict[int, List[int]]:
    """
    Ranked item ids per user from a retrieval file.
    """
    frame = pd.read_csv(stream, sep="\t", dtype={"user_id": int, "rank": int, "item_id": int})
    frame = frame.sort_values(["user_id", "rank"], kind="stable")
    return {int(user_id): group["item_id"].astype(int).tolist() for user_id, group in frame.groupby("user_id")}
