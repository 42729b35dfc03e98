# -*- coding: utf-8 -*-
from sidrank.action import Action
from sidrank.config import config
from sidrank.context import context
from sidrank.evaluation import build_experiment_data, evaluate_run, run_ablation, MetricsReport, ExperimentData
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import retrieval_config, model_config, train_config, seed, \
    report_digest
from sidrank.training import variants


def experiment_data(store: ArtifactStore) -> ExperimentData:
    """
    Training samples and held out sessions of the output directory artifacts.
    """
    return build_experiment_data(store.sessions(), store.sids(), config.data.get("retrieval.max_users"))


def write_report(store: ArtifactStore, report: MetricsReport, prefix: str = ""):
    """
    Write the report table and its key=value summary.
    """
    with open(store.path(prefix + "report.tsv"), "w", encoding="utf-8") as stream:
        report.write_tsv(stream)
    with open(store.path(prefix + "summary.txt"), "w", encoding="utf-8") as stream:
        report.write_summary(stream)
    events.artifact.saved(kind=prefix + "report", path=store.path(prefix + "report.tsv"))
    for key, value in report.summary():
        if key.startswith("hr."):
            context.log.info("%s=%s", key, value)


class EvalAction(Action):
    """
    Evaluate hit rates of the trained model on held out sessions.
    """

    @property
    def event_bindings(self):
        return events.phase.eval

    @property
    def name(self) -> str:
        return "eval:eval"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        data = experiment_data(store)
        backbone, head, variant_name = store.model()
        rates = evaluate_run(data, backbone, head, variants.get(variant_name).ranker, retrieval_config(),
                             config.data.get("eval.ks"))
        report = MetricsReport([seed()], report_digest())
        report.add(variant_name, rates)
        report.metadata["users"] = str(len(data.holdout))
        write_report(store, report)


class AblateAction(Action):
    """
    Train and evaluate every variant of the ablation matrix with every seed.
    """

    @property
    def event_bindings(self):
        return events.phase.ablate

    @property
    def name(self) -> str:
        return "eval:ablate"

    @staticmethod
    def execute():
        """
        Execute action
        """
        store = ArtifactStore()
        report = run_ablation(experiment_data(store), model_config(), train_config(), retrieval_config(),
                              config.data.get("eval.variants"), config.data.get("run.seeds"),
                              config.data.get("eval.ks"), report_digest())
        if report.metadata.get("batches_identical") != "true":
            context.log.warning("Variants were not trained on identical batches")
        write_report(store, report, "ablation_")
