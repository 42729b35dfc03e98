# -*- coding: utf-8 -*-
from .phase import Phase
from ..registry import Registry

phases = Registry(Phase, "Phase")  # type: Registry[Phase]
