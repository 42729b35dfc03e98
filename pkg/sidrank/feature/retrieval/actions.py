# -*- coding: utf-8 -*-
from sidrank.action import Action
from sidrank.config import config
from sidrank.context import context
from sidrank.evaluation import build_experiment_data, retrieve_users
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import retrieval_config
from sidrank.inference import Retriever, write_results
from sidrank.training import variants


class RetrieveAction(Action):
    """
    Retrieve items for every held out user with the trained model.
    """

    @property
    def event_bindings(self):
        return events.phase.retrieve

    @property
    def name(self) -> str:
        return "retrieval:retrieve"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        data = build_experiment_data(store.sessions(), store.sids(), config.data.get("retrieval.max_users"))
        backbone, head, variant_name = store.model()
        settings = retrieval_config()
        retriever = Retriever(backbone, head, data.corpus, settings.lambdas, settings.beams, settings.temperature,
                              settings.fuse, settings.constrained)
        results = retrieve_users(retriever, variants.get(variant_name).ranker, data.holdout, data.sids)

        with open(store.path("retrieval.tsv"), "w", encoding="utf-8") as stream:
            write_results(stream, results)
        events.artifact.saved(kind="retrieval", path=store.path("retrieval.tsv"))
        context.log.info("Retrieved items for %d users with variant %s", len(results), variant_name)
