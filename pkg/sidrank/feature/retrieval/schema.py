# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class RetrievalSchema(FeatureSchema):
    """
    Beam search schema. max_users limits retrieval and evaluation to the first held out users, 0 for all.
    """
    beams = fields.List(fields.Integer(validate=validate.Range(min=1)), load_default=lambda: [16, 512],
                        validate=validate.Length(min=1))
    fuse = fields.Boolean(load_default=False)
    constrained = fields.Boolean(load_default=False)
    max_users = fields.Integer(load_default=0, validate=validate.Range(min=0))
