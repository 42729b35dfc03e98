# -*- coding: utf-8 -*-
import logging
from dataclasses import replace
from typing import Sequence

from .experiment import ExperimentData, RetrievalConfig, train_variant, evaluate_run
from .report import MetricsReport
from ..model import ModelConfig
from ..training import TrainConfig, variants

log = logging.getLogger(__name__)


def run_ablation(data: ExperimentData, model_config: ModelConfig, train_config: TrainConfig,
                 retrieval: RetrievalConfig, variant_names: Sequence[str], seeds: Sequence[int], ks: Sequence[int],
                 config_digest: str) -> MetricsReport:
    """
    Train and evaluate every variant with every seed. Variants trained with the same seed should see the same
    batches: the report records whether they did.
    """
    report = MetricsReport(list(seeds), config_digest)
    identical = True
    for seed in seeds:
        seeded = replace(train_config, seed=seed)
        reference = None
        for name in variant_names:
            variant = variants.get(name)
            log.info("Training variant %s with seed %d", name, seed)
            run = train_variant(data, model_config, seeded, retrieval, variant)
            if reference is None:
                reference = run.batch_digests
            elif run.batch_digests != reference:
                identical = False
                log.error("Variant %s saw other batches than %s with seed %d", name, variant_names[0], seed)
            report.add(name, evaluate_run(data, run.backbone, run.head, variant.ranker, retrieval, ks))
    report.metadata["variants"] = ",".join(variant_names)
    report.metadata["batches_identical"] = str(identical).lower()
    return report
