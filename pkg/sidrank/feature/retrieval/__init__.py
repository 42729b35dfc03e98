# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .actions import RetrieveAction
from .schema import RetrievalSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...action import Action
from ...command import Command, LifecycleCommand
from ...config import config
from ...errors import ConfigValidationError
from ...phase import Phase


class RetrievalFeature(Feature):
    """
    Beam search retrieval.
    """

    @property
    def name(self) -> str:
        return "retrieval"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["rsp"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return RetrievalSchema

    @property
    def actions(self) -> Iterable[Action]:
        return (
            RetrieveAction(),
        )

    @property
    def phases(self) -> Iterable[Phase]:
        return (
            Phase("retrieve", "Retrieve items for held out users"),
        )

    @property
    def commands(self) -> Iterable[Command]:
        return (
            LifecycleCommand("retrieve", "Retrieve items for held out users", "retrieve"),
        )

    def configure(self):
        super().configure()
        beams = config.data.get("retrieval.beams")
        sizes = config.data.get("tokenizer.sizes")
        if sizes is not None and len(beams) != len(sizes):
            raise ConfigValidationError("retrieval.beams holds %d values, expected one per codebook (%d)"
                                        % (len(beams), len(sizes)))
