# -*- coding: utf-8 -*-
from argparse import ArgumentParser
from typing import Iterable, Type

from .actions import SweepAction
from .schema import SweepSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class SweepFeature(Feature):
    """
    Hyperparameter sweeps over the listwise preference weight and the level 2 candidate width.
    """

    @property
    def name(self) -> str:
        return "sweep"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["eval"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return SweepSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            SweepAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        def configure_parser(parser: ArgumentParser):
            parser.add_argument("--parameter", help="Swept parameter (alpha or lambda2)")
            parser.add_argument("--values", type=float, nargs="+", help="Swept values")

        return (
            Phase("sweep", "Run an hyperparameter sweep", configure_parser),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("sweep", "Run an hyperparameter sweep", "sweep"),
        )
