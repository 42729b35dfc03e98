# -*- coding: utf-8 -*-
from marshmallow import Schema, fields, RAISE


class ReviewRecordSchema(Schema):
    """
    Layout of a public product review dump record (one JSON object per line). Only documented: no adapter reads
    these dumps, sessions come from the synthetic generator.
    """

    class Meta:
        """
        Reject unknown fields.
        """
        unknown = RAISE

    reviewerID = fields.String(required=True, data_key="reviewerID")  # pylint:disable=invalid-name
    asin = fields.String(required=True)
    overall = fields.Float(required=True)
    unixReviewTime = fields.Integer(required=True, data_key="unixReviewTime")  # pylint:disable=invalid-name
    reviewText = fields.String(data_key="reviewText")  # pylint:disable=invalid-name
    summary = fields.String()
