# -*- coding: utf-8 -*-
from .config import Config

config = Config()
