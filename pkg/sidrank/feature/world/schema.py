# -*- coding: utf-8 -*-
from marshmallow import fields, validate

from sidrank.feature.schema import FeatureSchema


class WorldSchema(FeatureSchema):
    """
    Synthetic world schema. The world seed is the run seed.
    """
    n_items = fields.Integer(load_default=2000, validate=validate.Range(min=1))
    n_users = fields.Integer(load_default=500, validate=validate.Range(min=1))
    d_latent = fields.Integer(load_default=16, validate=validate.Range(min=1))
    n_clusters = fields.Integer(load_default=8, validate=validate.Range(min=1))
    n_subclusters = fields.Integer(load_default=8, validate=validate.Range(min=1))
    cluster_scale = fields.Float(load_default=4.0)
    subcluster_scale = fields.Float(load_default=1.0)
    item_noise = fields.Float(load_default=0.25, validate=validate.Range(min=0))
    feature_noise = fields.Float(load_default=0.1, validate=validate.Range(min=0))
    user_noise = fields.Float(load_default=0.5, validate=validate.Range(min=0))
    drift = fields.Float(load_default=1.0, validate=validate.Range(min=0))
    affinity_noise = fields.Float(load_default=0.5, validate=validate.Range(min=0))
    sessions_per_user = fields.Integer(load_default=8, validate=validate.Range(min=2))
    min_history = fields.Integer(load_default=4, validate=validate.Range(min=1))
    max_history = fields.Integer(load_default=20, validate=validate.Range(min=1))
    tier_counts = fields.List(fields.Integer(validate=validate.Range(min=0)), load_default=lambda: [1, 2, 3, 4],
                              validate=validate.Length(equal=4))
    exposure_band = fields.Integer(load_default=20, validate=validate.Range(min=0))
    pseudo_band = fields.Integer(load_default=200, validate=validate.Range(min=0))
    random_tiers = fields.Boolean(load_default=False)
