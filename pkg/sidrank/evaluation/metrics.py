# -*- coding: utf-8 -*-
from collections import OrderedDict
from typing import Mapping, Sequence, Set, Dict, Tuple

from ..datagen import Session

TRUTH_TIERS = OrderedDict([("click", (4, 3)), ("pv", (4, 3, 2))])


def hit_rate_at_k(results: Mapping[int, Sequence[int]], truth: Mapping[int, Set[int]], k: int) -> float:
    """
    Mean over users of the fraction of their truth items found in the top k results. Users with an empty truth
    set are not counted.
    """
    rates = []
    for user_id in sorted(truth):
        expected = set(truth[user_id])
        if not expected:
            continue
        top = set(list(results.get(user_id, ()))[:k])
        rates.append(len(top & expected) / len(expected))
    if not rates:
        return 0.0
    return sum(rates) / len(rates)


def truth_sets(sessions: Sequence[Session], tiers: Sequence[int]) -> Dict[int, Set[int]]:
    """
    Target items of the given tiers, per user.
    """
    ret = {}
    for session in sessions:
        ret.setdefault(session.user_id, set()).update(session.targets(tiers))
    return ret


def tiered_report(results: Mapping[int, Sequence[int]], sessions: Sequence[Session],
                  ks: Sequence[int]) -> Dict[Tuple[str, int], float]:
    """
    Hit rates per (truth tier, k): "click" truth is purchases and clicks, "pv" truth adds exposures.
    """
    users = set(results)
    sessions = [session for session in sessions if session.user_id in users]
    ret = OrderedDict()
    for name, tiers in TRUTH_TIERS.items():
        truth = truth_sets(sessions, tiers)
        for k in ks:
            ret[(name, k)] = hit_rate_at_k(results, truth, k)
    return ret
