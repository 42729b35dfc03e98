# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.run.schema import VARIANT_NAMES
from sidrank.feature.schema import FeatureSchema


class EvalSchema(FeatureSchema):
    """
    Evaluation schema: hit rate cutoffs and the variants of the ablation matrix.
    """
    ks = fields.List(fields.Integer(validate=validate.Range(min=1)), load_default=lambda: [20, 100, 500],
                     validate=validate.Length(min=1))
    variants = fields.List(fields.String(validate=validate.OneOf(VARIANT_NAMES)),
                           load_default=lambda: list(VARIANT_NAMES), validate=validate.Length(min=1))
