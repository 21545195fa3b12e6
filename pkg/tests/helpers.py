"""Independent reference implementations used as test oracles.

Deliberately naive: weights are plain double loops over pairs and optima are
exhaustive scans, sharing no code with the library's evaluation paths.
"""

import math
from itertools import combinations

from dispersion import InstanceSpec, generate_instance


def naive_l1(p, q):
    return sum(abs(a - b) for a, b in zip(p, q))


def naive_linf(p, q):
    return max(abs(a - b) for a, b in zip(p, q))


def naive_l2(p, q):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))


def naive_pair_weight(points, idx, dist=naive_l1):
    return sum(dist(points[a], points[b]) for a, b in combinations(idx, 2))


def brute_best(points, k, dist=naive_l1):
    """Exhaustive (weight, lexicographically smallest indices) optimum."""
    best_w = None
    best_c = None
    for combo in combinations(range(len(points)), k):
        w = naive_pair_weight(points, combo, dist)
        if best_w is None or w > best_w:
            best_w = w
            best_c = combo
    return best_w, best_c


def make_instance(n, d=2, seed=0, lo=-50, hi=50, clustered=False):
    if clustered:
        spec = InstanceSpec(
            n=n, d=d, lo=lo, hi=hi, seed=seed,
            distribution="clustered", clusters=min(3, n), spread=10,
        )
    else:
        spec = InstanceSpec(n=n, d=d, lo=lo, hi=hi, seed=seed)
    return generate_instance(spec)
