# -*- coding: utf-8 -*-
from .trie import SidTrie
from .retriever import BeamCandidate, RetrievedItem, RetrievalResult, Retriever, write_results, read_results
