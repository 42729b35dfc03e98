# -*- coding: utf-8 -*-
from .world import WorldConfig, World, generate_world
from .sessions import Session, SessionLog, generate_sessions, to_sample
from .io import save_world, load_world, save_sessions, load_sessions, save_sids, load_sids
from .review import ReviewRecordSchema
