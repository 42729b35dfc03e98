# -*- coding: utf-8 -*-
from typing import Iterable, List, Optional

from toposort import toposort_flatten

from . import features
from .eval import EvalFeature
from .feature import Feature
from .model import ModelFeature
from .retrieval import RetrievalFeature
from .rsp import RspFeature
from .run import RunFeature
from .serving import ServingFeature
from .sweep import SweepFeature
from .tokenizer import TokenizerFeature
from .train import TrainFeature
from .world import WorldFeature
from ..config import config
from ..errors import ConfigValidationError


def available_features() -> List[Feature]:
    """
    One feature per pipeline stage, plus "run", "model" and "rsp" which only own configuration and the pipeline.
    """
    return [EvalFeature(), ModelFeature(), RetrievalFeature(), RspFeature(), RunFeature(), ServingFeature(),
            SweepFeature(), TokenizerFeature(), TrainFeature(), WorldFeature()]


def get_sorted_features(candidates: Optional[Iterable[Feature]] = None) -> List[Feature]:
    """
    Dependencies first, then by name. Actions bound to the same phase run in this order.
    """
    by_name = {feature.name: feature for feature in (available_features() if candidates is None else candidates)}
    graph = {}
    for name, feature in by_name.items():
        missing = [dependency for dependency in feature.dependencies if dependency not in by_name]
        if missing:
            raise ValueError("Feature %s depends on missing features: %s" % (name, ", ".join(missing)))
        graph[name] = set(feature.dependencies)
    return [by_name[name] for name in toposort_flatten(graph, sort=True)]


def bootstrap_register_features():
    """
    Register every feature in dependency order.
    """
    features.clear()
    for feature in get_sorted_features():
        features.register(feature)


def configure_features():
    """
    Reject configuration sections no feature owns, then validate and fill every section.
    """
    unknown = sorted(key for key in config.data.to_dict() if not features.has(key))
    if unknown:
        raise ConfigValidationError("Unknown configuration sections: %s" % ", ".join(unknown))
    for feature in features.all():
        feature.configure()
