# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import GenerateAction
from .schema import WorldSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class WorldFeature(Feature):
    """
    Synthetic world and session generation.
    """

    @property
    def name(self) -> str:
        return "world"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["run"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return WorldSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            GenerateAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("gen", "Generate the synthetic world and sessions"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("gen", "Generate the synthetic world and sessions", "gen"),
        )
