# -*- coding: utf-8 -*-
from .cache import ResultCache, CachedResult
from .memory_cache import MemoryCache
