# -*- coding: utf-8 -*-
from .container import CheckpointContainer, MAGIC, FORMAT_VERSION
