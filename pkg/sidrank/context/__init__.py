# -*- coding: utf-8 -*-
from .context import Context

context = Context()
