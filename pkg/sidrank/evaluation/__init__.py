# -*- coding: utf-8 -*-
from .metrics import hit_rate_at_k, truth_sets, tiered_report, TRUTH_TIERS
from .report import ReportRow, MetricsReport, write_key_values
from .experiment import ExperimentData, RetrievalConfig, build_experiment_data, retrieve_users, train_variant, \
    evaluate_run
from .ablation import run_ablation
from .sweep import run_sweep, SWEEP_PARAMETERS
