# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import TrainAction
from .schema import TrainSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class TrainFeature(Feature):
    """
    Model training.
    """

    @property
    def name(self) -> str:
        return "train"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["rsp"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return TrainSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            TrainAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("train", "Train the generative retrieval model"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("train", "Train the generative retrieval model", "train"),
        )
