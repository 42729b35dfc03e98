# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import TokenizeAction
from .schema import TokenizerSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...phase import Phase


class TokenizerFeature(Feature):
    """
    Semantic id tokenizer.
    """

    @property
    def name(self) -> str:
        return "tokenizer"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["world"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return TokenizerSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            TokenizeAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("tokenize", "Train codebooks and assign semantic ids"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("tokenize", "Train codebooks and assign semantic ids", "tokenize"),
        )
