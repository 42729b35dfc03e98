# -*- coding: utf-8 -*-
from .head import RankHead, build_rank_head, rank_score, SCORE_EPS
from .candidates import CandidateSet, select_candidates, hidden_set
from .losses import RspConfig, JointLosses, bce_loss, score_targets, total_loss
