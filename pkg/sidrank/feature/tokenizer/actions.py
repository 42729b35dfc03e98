# -*- coding: utf-8 -*-
import numpy as np

from sidrank.action import Action
from sidrank.config import config
from sidrank.context import context
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import seed
from sidrank.tokenizer import train_codebooks, assign_corpus, reconstruction_errors


class TokenizeAction(Action):
    """
    Train codebooks on item features and assign a unique semantic id to every item.
    """

    @property
    def event_bindings(self):
        return events.phase.tokenize

    @property
    def name(self) -> str:
        return "tokenizer:tokenize"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        features = store.world().features()
        sizes = config.data.get("tokenizer.sizes")
        trained = train_codebooks(features, len(sizes), sizes, seed(),
                                  max_iterations=config.data.get("tokenizer.max_iterations"),
                                  tolerance=config.data.get("tokenizer.tolerance"))
        codebooks = store.save_codebooks(trained)

        errors = reconstruction_errors(np.stack([feature.vector for feature in features]), codebooks)
        context.log.info("Codebooks trained, mean squared residual per level: %s",
                         ", ".join("%.4f" % error for error in errors))

        sids = assign_corpus(features, codebooks)
        store.save_sids(sids)
        context.log.info("Assigned %d semantic ids (capacity %d)", len(sids), codebooks.capacity)
