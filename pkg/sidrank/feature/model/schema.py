# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class ModelSchema(FeatureSchema):
    """
    Decoder backbone schema.
    """
    d_model = fields.Integer(load_default=64, validate=validate.Range(min=1))
    n_layers = fields.Integer(load_default=2, validate=validate.Range(min=1))
    n_heads = fields.Integer(load_default=4, validate=validate.Range(min=1))
    max_seq_len = fields.Integer(load_default=128, validate=validate.Range(min=2))
    mlp_ratio = fields.Integer(load_default=4, validate=validate.Range(min=1))
    layer_norm_eps = fields.Float(load_default=1e-5, validate=validate.Range(min=0, min_inclusive=False))
    init_std = fields.Float(load_default=0.02, validate=validate.Range(min=0, min_inclusive=False))
