# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema
from sidrank.serving.simulator import HOUR_MS


class ServingSchema(FeatureSchema):
    """
    Serving simulation schema, durations in virtual milliseconds.

    streaming_steps caps the optimizer steps run before each model sync, 0 to serve the trained model only.
    """
    request_rate = fields.Float(load_default=2.0, validate=validate.Range(min=0, min_inclusive=False))
    n_users = fields.Integer(load_default=50, validate=validate.Range(min=1))
    inference_latency_ms = fields.Integer(load_default=60, validate=validate.Range(min=1))
    latency_jitter_ms = fields.Integer(load_default=0, validate=validate.Range(min=0))
    window_ms = fields.Integer(load_default=100, validate=validate.Range(min=1))
    lookup_ms = fields.Integer(load_default=1, validate=validate.Range(min=0))
    cache_ttl_ms = fields.Integer(load_default=HOUR_MS, validate=validate.Range(min=1))
    sync_period_ms = fields.Integer(load_default=HOUR_MS, validate=validate.Range(min=1))
    duration_ms = fields.Integer(load_default=3 * HOUR_MS, validate=validate.Range(min=1))
    inference_workers = fields.Integer(load_default=0, validate=validate.Range(min=0))
    allow_stale = fields.Boolean(load_default=False)
    event_log = fields.Boolean(load_default=True)
    streaming_steps = fields.Integer(load_default=20, validate=validate.Range(min=0))
