# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.evaluation import SWEEP_PARAMETERS
from sidrank.feature.schema import FeatureSchema


class SweepSchema(FeatureSchema):
    """
    Hyperparameter sweep schema.
    """
    parameter = fields.String(load_default="alpha", validate=validate.OneOf(SWEEP_PARAMETERS))
    values = fields.List(fields.Float(validate=validate.Range(min=0)), load_default=lambda: [0.0, 0.5, 1.0, 2.0],
                         validate=validate.Length(min=1))
