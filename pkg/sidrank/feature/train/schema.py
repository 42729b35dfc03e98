# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class TrainSchema(FeatureSchema):
    """
    Training schema. The learning rate decays linearly to 0 over steps.
    """
    steps = fields.Integer(load_default=300, validate=validate.Range(min=0))
    batch_size = fields.Integer(load_default=16, validate=validate.Range(min=1))
    learning_rate = fields.Float(load_default=0.05, validate=validate.Range(min=0))
    momentum = fields.Float(load_default=0.9, validate=validate.Range(min=0, max=1))
    alpha = fields.Float(load_default=1.0, validate=validate.Range(min=0))
    beta = fields.Float(load_default=0.1, validate=validate.Range(min=0, min_inclusive=False))
    normalize_ldpo = fields.Boolean(load_default=True)
    positive_tiers = fields.List(fields.Integer(validate=validate.OneOf([1, 2, 3, 4])),
                                 load_default=lambda: [1, 2, 3, 4], validate=validate.Length(min=1))
    warmup_steps = fields.Integer(load_default=100, validate=validate.Range(min=0))
    log_every = fields.Integer(load_default=50, validate=validate.Range(min=0))
