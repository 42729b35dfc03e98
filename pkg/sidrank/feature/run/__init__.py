# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import ThreadsAction
from .schema import RunSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand


class RunFeature(Feature):
    """
    Run wide settings (seeds, output directory, variant) and the end to end pipeline.
    """

    @property
    def name(self) -> str:
        return "run"

    @property
    def schema(self) -> Type[FeatureSchema]:
        return RunSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            ThreadsAction(),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("pipeline", "Generate, tokenize, train and evaluate in a single command",
                             "gen", "tokenize", "train", "eval"),
        )
