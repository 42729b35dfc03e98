# -*- coding: utf-8 -*-
import os
from pathlib import Path
from typing import Callable, Optional

import pytest
import torch
import yaml
from _pytest.fixtures import FixtureRequest
from _pytest.tmpdir import TempPathFactory
from pytest_mock import MockerFixture
from verboselogs import SPAM

from sidrank.__main__ import reset, configure_logging
from sidrank.config import config
from sidrank.config.config import ConfigPaths
from sidrank.model import ModelConfig, build_backbone
from sidrank.rsp import build_rank_head

TINY_CONFIG = {
    "run": {"seed": 3, "seeds": [0, 1]},
    "world": {"n_items": 48, "n_users": 6, "d_latent": 4, "n_clusters": 2, "n_subclusters": 2,
              "sessions_per_user": 3, "min_history": 2, "max_history": 6, "tier_counts": [1, 1, 2, 2]},
    "tokenizer": {"sizes": [4, 16], "max_iterations": 10},
    "model": {"d_model": 8, "n_layers": 1, "n_heads": 2, "max_seq_len": 64},
    "rsp": {"lambdas": [4, 8]},
    "train": {"steps": 3, "batch_size": 4, "log_every": 1, "warmup_steps": 1},
    "retrieval": {"beams": [4, 16]},
    "eval": {"ks": [5, 10], "variants": ["full", "no-both"]},
    "sweep": {"parameter": "alpha", "values": [0.0, 1.0]},
    "serving": {"request_rate": 0.005, "n_users": 4, "duration_ms": 2 * 3600 * 1000, "streaming_steps": 1},
}


@pytest.fixture(scope="module")
def global_data_dir(request: FixtureRequest) -> str:
    filename = request.module.__file__
    dirname = os.path.dirname(filename)
    return os.path.join(os.path.join(dirname, "data"))


@pytest.fixture(scope="module")
def data_dir(global_data_dir: str, request: FixtureRequest) -> str:
    filename = request.module.__file__
    dirname = os.path.dirname(global_data_dir)
    data_dirname, _ = os.path.splitext(os.path.basename(filename))
    return os.path.join(dirname, data_dirname + ".data")


@pytest.fixture()
def tiny_config() -> dict:
    """
    Configuration of a world small enough to run every command in a few seconds.
    """
    return yaml.safe_load(yaml.safe_dump(TINY_CONFIG))


@pytest.fixture()
def project_loader(tiny_config: dict, tmp_path_factory: TempPathFactory, request: FixtureRequest) -> Callable[
    [Optional[dict]], Path]:
    def load(overrides: Optional[dict] = None) -> Path:
        tmp_path = tmp_path_factory.mktemp(request.function.__name__)  # type: Path
        data = tiny_config
        for section, values in (overrides or {}).items():
            data.setdefault(section, {}).update(values)
        with open(str(tmp_path / "sidrank.yml"), "w", encoding="utf-8") as stream:
            yaml.safe_dump(data, stream)
        os.chdir(str(tmp_path))
        config.paths = ConfigPaths(project_home=str(tmp_path))
        return tmp_path

    return load


@pytest.fixture()
def double_model():
    """
    Tiny double precision backbone and rank head, m=2, V={4,6}.
    """
    model_config = ModelConfig(d_model=8, n_layers=1, n_heads=2, vocab_sizes=(4, 6), max_seq_len=64)
    backbone = build_backbone(model_config, 11, torch.float64)
    head = build_rank_head(model_config.d_model, 12, torch.float64)
    return backbone, head


@pytest.fixture(autouse=True)
def configure(mocker: MockerFixture):
    original_environ = dict(os.environ)
    original_paths = config.paths
    cwd = os.getcwd()

    try:
        os.environ.pop("RGR_PROJECT_HOME", None)
        mocker.patch.dict(os.environ, {"RGR_THREADS": "1"})
        configure_logging(SPAM)
        yield
    finally:
        os.chdir(cwd)
        os.environ.clear()
        os.environ.update(original_environ)
        config.paths = original_paths
        reset()
