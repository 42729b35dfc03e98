# -*- coding: utf-8 -*-
from sidrank.config import config
from sidrank.datagen import WorldConfig
from sidrank.evaluation import RetrievalConfig
from sidrank.model import ModelConfig
from sidrank.rsp import RspConfig
from sidrank.serving import SimConfig
from sidrank.training import TrainConfig

# Artifacts digests ignore settings only read after training. Trailing "." excludes a section.
ARTIFACT_DIGEST_EXCLUDED = ("run.out", "run.seeds", "run.variant", "retrieval.", "eval.", "sweep.", "serving.")
REPORT_DIGEST_EXCLUDED = ("run.out",)


def _section(name: str) -> dict:
    data = dict(config.data.get(name) or {})
    data.pop("disabled", None)
    return data


def _digest(excluded_keys) -> str:
    flat = config.flat()
    kept = {key: value for key, value in flat.items()
            if not any(key == excluded or (excluded.endswith(".") and key.startswith(excluded))
                       for excluded in excluded_keys)}
    return config.digest(kept)


def run_digest() -> str:
    """
    Digest embedded in world, sessions, codebooks, semantic ids and model artifacts.
    """
    return _digest(ARTIFACT_DIGEST_EXCLUDED)


def report_digest() -> str:
    """
    Digest of the whole configuration but the output directory, embedded in reports.
    """
    return _digest(REPORT_DIGEST_EXCLUDED)


def seed() -> int:
    """
    Run seed.
    """
    return config.data.get("run.seed")


def world_config() -> WorldConfig:
    """
    Synthetic world configuration.
    """
    data = _section("world")
    data["tier_counts"] = tuple(data["tier_counts"])
    return WorldConfig(seed=seed(), **data)


def model_config() -> ModelConfig:
    """
    Backbone configuration. Codebook sizes come from the tokenizer section.
    """
    return ModelConfig(vocab_sizes=tuple(config.data.get("tokenizer.sizes")), **_section("model"))


def rsp_config() -> RspConfig:
    """
    Candidate selection configuration.
    """
    return RspConfig(tuple(config.data.get("rsp.lambdas")), config.data.get("rsp.temperature"),
                     config.data.get("rsp.last_only"))


def train_config(train_seed=None) -> TrainConfig:
    """
    Optimization configuration.
    """
    data = _section("train")
    data["positive_tiers"] = tuple(data["positive_tiers"])
    return TrainConfig(seed=seed() if train_seed is None else train_seed,
                       rsp_last_only=config.data.get("rsp.last_only"),
                       **data)


def retrieval_config() -> RetrievalConfig:
    """
    Decoding configuration.
    """
    return RetrievalConfig(tuple(config.data.get("rsp.lambdas")), tuple(config.data.get("retrieval.beams")),
                           config.data.get("rsp.temperature"), config.data.get("retrieval.fuse"),
                           config.data.get("retrieval.constrained"))


def sim_config() -> SimConfig:
    """
    Serving simulation configuration.
    """
    data = _section("serving")
    for key in ("event_log", "streaming_steps"):
        data.pop(key, None)
    return SimConfig(seed=seed(), **data)
