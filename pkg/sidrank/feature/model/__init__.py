# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .schema import ModelSchema
from ..feature import Feature
from ..schema import FeatureSchema


class ModelFeature(Feature):
    """
    Decoder backbone settings, shared by training and retrieval.
    """

    @property
    def name(self) -> str:
        return "model"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["tokenizer"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return ModelSchema
