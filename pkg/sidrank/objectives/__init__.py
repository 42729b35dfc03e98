# -*- coding: utf-8 -*-
from .layout import SessionSample, Segment, TrainingLayout, TIERS, build_layout, build_mask, build_causal_layout, \
    fit_sample, prediction_position, collate
from .losses import LossWeights, LdpoResult, IapLosses, item_score, ldpo_loss, ntp_loss, iap_loss, \
    history_ntp_loss, target_log_probs
