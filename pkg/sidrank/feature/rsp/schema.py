# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class RspSchema(FeatureSchema):
    """
    Refined scoring schema: candidate width per level and softmax temperature of candidate selection.
    """
    lambdas = fields.List(fields.Integer(validate=validate.Range(min=1)), load_default=lambda: [16, 32],
                          validate=validate.Length(min=1))
    temperature = fields.Float(load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))
    last_only = fields.Boolean(load_default=False)
