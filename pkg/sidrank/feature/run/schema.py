# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema

VARIANT_NAMES = ("full", "no-iap", "no-rsp", "no-both")


class RunSchema(FeatureSchema):
    """
    Run schema
    """
    seed = fields.Integer(load_default=0)
    seeds = fields.List(fields.Integer(), load_default=lambda: [0, 1, 2, 3, 4], validate=validate.Length(min=1))
    out = fields.String(load_default="sidrank-out")
    variant = fields.String(load_default="full", validate=validate.OneOf(VARIANT_NAMES))
