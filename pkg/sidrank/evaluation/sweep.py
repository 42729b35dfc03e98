# -*- coding: utf-8 -*-
import logging
from dataclasses import replace
from typing import Sequence

from .experiment import ExperimentData, RetrievalConfig, train_variant, evaluate_run
from .report import MetricsReport
from ..model import ModelConfig
from ..training import TrainConfig, variants

log = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("alpha", "lambda2")


def _format_value(value: float) -> str:
    return ("%g" % value) if isinstance(value, float) else str(value)


def run_sweep(data: ExperimentData, model_config: ModelConfig, train_config: TrainConfig,
              retrieval: RetrievalConfig, variant_name: str, parameter: str, values: Sequence, seeds: Sequence[int],
              ks: Sequence[int], config_digest: str) -> MetricsReport:
    """
    Train and evaluate once per value and seed. "alpha" sets the listwise preference loss weight, "lambda2" the
    level 2 candidate width of training and retrieval.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError("unknown sweep parameter %s, expected one of %s" % (parameter, ", ".join(SWEEP_PARAMETERS)))
    if parameter == "lambda2" and len(retrieval.lambdas) < 2:
        raise ValueError("lambda2 sweep needs semantic ids of 2 levels or more")
    variant = variants.get(variant_name)
    report = MetricsReport(list(seeds), config_digest)
    for value in values:
        label = "%s=%s" % (parameter, _format_value(value))
        swept_train = train_config
        swept_retrieval = retrieval
        if parameter == "alpha":
            swept_train = replace(train_config, alpha=float(value))
        else:
            lambdas = list(retrieval.lambdas)
            lambdas[1] = int(value)
            swept_retrieval = replace(retrieval, lambdas=tuple(lambdas))
        for seed in seeds:
            log.info("Sweep %s with seed %d", label, seed)
            run = train_variant(data, model_config, replace(swept_train, seed=seed), swept_retrieval, variant)
            report.add(label, evaluate_run(data, run.backbone, run.head, variant.ranker, swept_retrieval, ks))
    report.metadata["parameter"] = parameter
    report.metadata["variant"] = variant_name
    return report
