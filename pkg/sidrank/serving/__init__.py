# -*- coding: utf-8 -*-
from .events import EventKind, ServingEvent, EventQueue
from .simulator import SimConfig, ServingReport, ServedRequest, Simulator, TrainerHandle, VersionCounter, \
    run_simulation, streaming_update_loop
