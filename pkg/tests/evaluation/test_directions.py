# -*- coding: utf-8 -*-
import logging

import pytest

from sidrank.datagen import WorldConfig, generate_world, generate_sessions
from sidrank.evaluation import RetrievalConfig, build_experiment_data, run_ablation, run_sweep
from sidrank.model import ModelConfig
from sidrank.tokenizer import train_codebooks, assign_corpus
from sidrank.training import TrainConfig, register_default_variants

log = logging.getLogger(__name__)

SEEDS = (0, 1, 2, 3, 4)
KS = (20, 100)


@pytest.fixture(scope="module")
def data():
    world_config = WorldConfig()
    world = generate_world(world_config)
    features = world.features()
    sids = assign_corpus(features, train_codebooks(features, 2, ModelConfig().vocab_sizes, seed=0))
    return build_experiment_data(generate_sessions(world, world_config), sids)


@pytest.fixture(autouse=True)
def default_variants():
    register_default_variants()


def mean(report, label, k, tier="click"):
    return report.row(label, tier, k).mean


@pytest.mark.slow
def test_ablation_order(data):
    report = run_ablation(data, ModelConfig(), TrainConfig(log_every=0), RetrievalConfig(),
                          ["full", "no-iap", "no-rsp", "no-both"], SEEDS, KS, "defaults")

    assert report.metadata["batches_identical"] == "true"
    for k in KS:
        rates = {label: mean(report, label, k) for label in report.labels}
        log.info("HR@%d %s", k, rates)
        assert rates["full"] > rates["no-iap"]
        assert rates["full"] > rates["no-rsp"]
        assert rates["no-iap"] > rates["no-both"]
        assert rates["no-rsp"] > rates["no-both"]
        assert rates["full"] - rates["no-both"] >= 0.03


@pytest.mark.slow
def test_preference_weight(data):
    report = run_sweep(data, ModelConfig(), TrainConfig(log_every=0), RetrievalConfig(), "full", "alpha",
                       [0.0, 1.0, 4.0], SEEDS, KS, "defaults")

    for k in KS:
        log.info("HR@%d alpha=0 %.4f alpha=1 %.4f alpha=4 %.4f", k, mean(report, "alpha=0", k),
                 mean(report, "alpha=1", k), mean(report, "alpha=4", k))
        assert mean(report, "alpha=1", k) > mean(report, "alpha=0", k)
        assert len(report.row("alpha=4", "click", k).values) == len(SEEDS)


@pytest.mark.slow
def test_wider_candidates(data):
    values = [8, 16, 32, 64]
    report = run_sweep(data, ModelConfig(), TrainConfig(log_every=0), RetrievalConfig(), "full", "lambda2",
                       values, SEEDS, KS, "defaults")

    for k in KS:
        rates = [mean(report, "lambda2=%d" % value, k) for value in values]
        log.info("HR@%d by lambda2 %s", k, rates)
        assert all(lower <= higher for lower, higher in zip(rates, rates[1:]))
        assert rates[0] < rates[-1]
