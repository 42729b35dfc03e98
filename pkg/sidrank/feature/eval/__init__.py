# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import EvalAction, AblateAction
from .schema import EvalSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class EvalFeature(Feature):
    """
    Hit rate evaluation and ablation matrix.
    """

    @property
    def name(self) -> str:
        return "eval"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["train", "retrieval"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return EvalSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            EvalAction(),
            AblateAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("eval", "Evaluate hit rates of the trained model"),
            Phase("ablate", "Train and evaluate every model variant"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("eval", "Evaluate hit rates of the trained model", "eval"),
            LifecycleCommand("ablate", "Train and evaluate every model variant over seeds", "ablate"),
        )
