# -*- coding: utf-8 -*-
from .codebooks import ItemFeature, Codebooks, SemanticId, train_codebooks, kmeans, residuals, \
    reconstruction_errors
from .assign import encode_item, encode_vectors, assign_corpus
