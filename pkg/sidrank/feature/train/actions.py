# -*- coding: utf-8 -*-
from sidrank.action import Action
from sidrank.config import config
from sidrank.context import context
from sidrank.evaluation import build_experiment_data
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import model_config, train_config, rsp_config
from sidrank.training import Trainer, variants, write_loss_log


class TrainAction(Action):
    """
    Train the configured variant on the training sessions.
    """

    @property
    def event_bindings(self):
        return events.phase.train

    @property
    def name(self) -> str:
        return "train:train"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        data = build_experiment_data(store.sessions(), store.sids())
        variant = variants.get(config.data.get("run.variant"))
        trainer = Trainer(model_config(), train_config(), rsp_config(), variant, data.train_samples)
        context.log.info("Training variant %s on %d samples for %d steps", variant.name, len(data.train_samples),
                         trainer.config.steps)
        run = trainer.train(show_progress=not getattr(config.args, "silent", False))

        store.save_model(run.backbone, run.head, variant.name, trainer.step_count)
        with open(store.path("loss_log.tsv"), "w", encoding="utf-8") as stream:
            write_loss_log(stream, run.loss_log)
        events.artifact.saved(kind="loss_log", path=store.path("loss_log.tsv"))
        if run.loss_log:
            context.log.info("Final losses: %s", " ".join("%s=%.5f" % item for item in run.loss_log[-1].losses.items()))
