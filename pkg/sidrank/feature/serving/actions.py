# -*- coding: utf-8 -*-
import copy
from dataclasses import replace
from typing import Callable, Dict, List, Tuple, Sequence

from sidrank.action import Action
from sidrank.config import config
from sidrank.context import context
from sidrank.datagen import Session
from sidrank.evaluation import build_experiment_data, write_key_values
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import sim_config, model_config, train_config, rsp_config, retrieval_config, \
    report_digest
from sidrank.inference import Retriever
from sidrank.objectives import SessionSample
from sidrank.serving import TrainerHandle, VersionCounter, run_simulation
from sidrank.tokenizer import SemanticId
from sidrank.training import Trainer, StreamingTrainer, ModelSnapshot, variants


class StreamingTrainerHandle(TrainerHandle):
    """
    Feed the streaming trainer with the latest training sample of each served user, and publish a snapshot on
    every model sync.
    """

    def __init__(self, streaming: StreamingTrainer, samples: Dict[int, SessionSample]):
        self.streaming = streaming
        self.samples = samples

    def ingest(self, user_id: int, time: int):
        sample = self.samples.get(user_id)
        if sample is not None:
            self.streaming.ingest([sample])

    def sync(self, time: int) -> int:
        return self.streaming.snapshot().version


class SimulatedUsers:
    """
    Simulated user ids mapped onto held out sessions, with one retrieval per model version and user.
    """

    def __init__(self, holdout: Sequence[Session], sids: Dict[int, SemanticId], ranker: str,
                 snapshot: Callable[[int], ModelSnapshot]):
        self.holdout = list(holdout)
        self.sids = sids
        self.corpus = {sid: item_id for item_id, sid in sids.items()}
        self.ranker = ranker
        self.snapshot = snapshot
        self._results = {}  # type: Dict[Tuple[int, int], List[int]]
        self._retrievers = {}  # type: Dict[int, Retriever]

    def session(self, user_id: int) -> Session:
        """
        Held out session standing for a simulated user.
        """
        return self.holdout[user_id % len(self.holdout)]

    def retriever(self, version: int) -> Retriever:
        """
        Retriever of a model version.
        """
        if version not in self._retrievers:
            snapshot = self.snapshot(version)
            settings = retrieval_config()
            self._retrievers[version] = Retriever(snapshot.backbone, snapshot.head, self.corpus, settings.lambdas,
                                                  settings.beams, settings.temperature, settings.fuse,
                                                  settings.constrained)
        return self._retrievers[version]

    def __call__(self, version: int, user_id: int) -> List[int]:
        key = (version, user_id)
        if key not in self._results:
            history = [self.sids[item] for item in self.session(user_id).history]
            self._results[key] = self.retriever(version).retrieve(history, self.ranker).item_ids()
        return self._results[key]


class ServeSimAction(Action):
    """
    Simulate asynchronous serving of the trained model.
    """

    @property
    def event_bindings(self):
        return events.phase.serve_sim

    @property
    def name(self) -> str:
        return "serving:serve-sim"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        data = build_experiment_data(store.sessions(), store.sids(), config.data.get("retrieval.max_users"))
        backbone, head, variant_name = store.model()
        variant = variants.get(variant_name)
        settings = sim_config()

        streaming_steps = config.data.get("serving.streaming_steps")
        if streaming_steps:
            # The loaded model is already past warm-up.
            trainer = Trainer(model_config(), replace(train_config(), warmup_steps=0), rsp_config(), variant, [],
                              backbone=copy.deepcopy(backbone).train(),
                              head=copy.deepcopy(head).train() if head is not None else None, decay=False)
            streaming = StreamingTrainer(trainer, streaming_steps)
            users = SimulatedUsers(data.holdout, data.sids, variant.ranker,
                                   lambda version: streaming.snapshots[version])
            latest = {sample.user_id: sample for sample in data.train_samples}
            samples = {user_id: latest[users.session(user_id).user_id] for user_id in range(settings.n_users)
                       if users.session(user_id).user_id in latest}
            handle = StreamingTrainerHandle(streaming, samples)
        else:
            users = SimulatedUsers(data.holdout, data.sids, variant.ranker,
                                   lambda version: ModelSnapshot(version, backbone, head))
            handle = VersionCounter()

        report = run_simulation(settings, users, handle)

        with open(store.path("serving.txt"), "w", encoding="utf-8") as stream:
            write_key_values(stream, [("config_digest", report_digest()), ("variant", variant_name)]
                             + report.summary())
        events.artifact.saved(kind="serving", path=store.path("serving.txt"))
        if config.data.get("serving.event_log"):
            with open(store.path("events.log"), "w", encoding="utf-8") as stream:
                report.write_events(stream)
            events.artifact.saved(kind="events", path=store.path("events.log"))
        context.log.info("Served %d requests, hit rate %.4f, p99 latency %.1f ms, %d model syncs",
                         report.requests, report.hit_rate, report.p99_latency_ms, report.syncs)
