# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Optional, Mapping

from .metrics import tiered_report
from ..datagen import Session, SessionLog, to_sample
from ..inference import Retriever, RetrievalResult
from ..model import ModelConfig, Backbone
from ..objectives import SessionSample
from ..rsp import RankHead, RspConfig
from ..tokenizer import SemanticId
from ..training import Trainer, TrainConfig, TrainingRun, Variant

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RetrievalConfig:
    """
    Decoding settings.
    """
    lambdas: Tuple[int, ...] = (16, 32)
    beams: Tuple[int, ...] = (16, 512)
    temperature: float = 1.0
    fuse: bool = False
    constrained: bool = False

    @property
    def rsp(self) -> RspConfig:
        """
        Candidate selection settings shared with training.
        """
        return RspConfig(tuple(self.lambdas), self.temperature)


@dataclass
class ExperimentData:
    """
    Training samples, held out sessions and the semantic ids they are expressed with.
    """
    train_samples: List[SessionSample]
    holdout: List[Session]
    sids: Dict[int, SemanticId]

    @property
    def corpus(self) -> Dict[SemanticId, int]:
        """
        Item id of every semantic id.
        """
        return {sid: item_id for item_id, sid in self.sids.items()}


def build_experiment_data(session_log: SessionLog, sids: Mapping[int, SemanticId],
                          max_users: Optional[int] = None) -> ExperimentData:
    """
    Split sessions into training samples and held out sessions (max_users first users when given).
    """
    holdout = sorted(session_log.holdout_sessions(), key=lambda session: session.user_id)
    if max_users:
        holdout = holdout[:max_users]
    samples = [to_sample(session, sids) for session in session_log.train_sessions()]
    return ExperimentData(samples, holdout, dict(sids))


def retrieve_users(retriever: Retriever, ranker: str, sessions: Sequence[Session],
                   sids: Mapping[int, SemanticId]) -> Dict[int, RetrievalResult]:
    """
    Retrieve items for the history of each session.
    """
    return {session.user_id: retriever.retrieve([sids[item] for item in session.history], ranker)
            for session in sessions}


def train_variant(data: ExperimentData, model_config: ModelConfig, train_config: TrainConfig,
                  retrieval: RetrievalConfig, variant: Variant) -> TrainingRun:
    """
    Train one variant on the experiment samples.
    """
    trainer = Trainer(model_config, train_config, retrieval.rsp, variant, data.train_samples)
    return trainer.train()


def evaluate_run(data: ExperimentData, backbone: Backbone, head: Optional[RankHead], ranker: str,
                 retrieval: RetrievalConfig, ks: Sequence[int]) -> Dict[Tuple[str, int], float]:
    """
    Hit rates of a trained model on the held out sessions.
    """
    backbone.eval()
    retriever = Retriever(backbone, head, data.corpus, retrieval.lambdas, retrieval.beams, retrieval.temperature,
                          retrieval.fuse, retrieval.constrained)
    results = retrieve_users(retriever, ranker, data.holdout, data.sids)
    return tiered_report({user_id: result.item_ids() for user_id, result in results.items()}, data.holdout, ks)
