# -*- coding: utf-8 -*-
from sidrank.action import Action
from sidrank.config import config
from sidrank.event import events
from sidrank.evaluation import run_sweep
from sidrank.feature.eval.actions import experiment_data, write_report
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import model_config, train_config, retrieval_config, report_digest


class SweepAction(Action):
    """
    Train and evaluate the configured variant once per swept value and seed.
    """

    @property
    def event_bindings(self):
        return events.phase.sweep

    @property
    def name(self) -> str:
        return "sweep:sweep"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        parameter = config.data.get("sweep.parameter")
        values = config.data.get("sweep.values")
        if parameter == "lambda2":
            values = [int(value) for value in values]
        report = run_sweep(experiment_data(store), model_config(), train_config(), retrieval_config(),
                           config.data.get("run.variant"), parameter, values, config.data.get("run.seeds"),
                           config.data.get("eval.ks"), report_digest())
        write_report(store, report, "sweep_")
