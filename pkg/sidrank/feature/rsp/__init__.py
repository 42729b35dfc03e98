# -*- coding: utf-8 -*-
from typing import Iterable, Type

from .schema import RspSchema
from ..feature import Feature
from ..schema import FeatureSchema
from ...config import config
from ...errors import ConfigValidationError


class RspFeature(Feature):
    """
    Rank head settings, shared by training and retrieval.
    """

    @property
    def name(self) -> str:
        return "rsp"

    @property
    def dependencies(self) -> Iterable[str]:
        return ["model"]

    @property
    def schema(self) -> Type[FeatureSchema]:
        return RspSchema

    def configure(self):
        super().configure()
        lambdas = config.data.get("rsp.lambdas")
        sizes = config.data.get("tokenizer.sizes")
        if sizes is not None and len(lambdas) != len(sizes):
            raise ConfigValidationError("rsp.lambdas holds %d values, expected one per codebook (%d)"
                                        % (len(lambdas), len(sizes)))
