# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class TokenizerSchema(FeatureSchema):
    """
    Residual quantizer schema. The number of levels is the number of codebook sizes.
    """
    sizes = fields.List(fields.Integer(validate=validate.Range(min=1)), load_default=lambda: [32, 64],
                        validate=validate.Length(min=1))
    max_iterations = fields.Integer(load_default=50, validate=validate.Range(min=1))
    tolerance = fields.Float(load_default=1e-8, validate=validate.Range(min=0))
