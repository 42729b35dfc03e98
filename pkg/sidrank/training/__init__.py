# -*- coding: utf-8 -*-
from .variants import Variant, variants, register_default_variants
from .trainer import TrainConfig, Trainer, TrainingRun, LossRecord, batch_digest, write_loss_log
from .streaming import StreamingTrainer, ModelSnapshot
