# -*- coding: utf-8 -*-
from .config import ModelConfig, BOS, PAD
from .backbone import Backbone, ForwardTrace, build_backbone, causal_mask, additive_mask, MASKED
from .gradients import gradients
