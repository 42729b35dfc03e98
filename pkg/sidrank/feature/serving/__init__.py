# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import ServeSimAction
from .schema import ServingSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class ServingFeature(Feature):
    """
    Serving simulation with asynchronous inference and result cache.
    """

    @property
    def name(self) -> str:
        return "serving"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["train", "retrieval"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return ServingSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            ServeSimAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("serve-sim", "Run the serving simulation"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("serve-sim", "Simulate asynchronous serving of the trained model", "serve-sim"),
        )
