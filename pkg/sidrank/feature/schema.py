# -*- coding: utf-8 -*-
from marshmallow import Schema, fields, RAISE


class FeatureSchema(Schema):
    """
    Base feature schema. Unknown keys are rejected.
    """

    class Meta:
        """
        Schema options.
        """
        unknown = RAISE
        ordered = True

    disabled = fields.Bool(load_default=False)
