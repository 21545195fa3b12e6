"""Ground truth and comparison baselines.

brute_force enumerates every k-subset and is the oracle that all other
solvers are checked against. greedy_baseline is a fast comparison foil:
farthest-pair seeding, greedy insertion, then single-swap local search.
"""

from __future__ import annotations

import time
from math import comb

from . import backend
from .errors import BudgetExceededError, InfeasibleError
from .geometry import (
    Metric,
    PointSet,
    l1_distance,
    l2_distance,
    rotate_linf_to_l1,
    subset_weight,
)
from .solution import Solution

DEFAULT_SUBSET_BUDGET = 10**8


def _distance_matrix(ps: PointSet, metric: Metric):
    """Dense pairwise distances; LINF entries are doubled Chebyshev values
    (rotated coordinates), matching the internal weight scale everywhere."""
    if metric is Metric.LINF:
        ps = rotate_linf_to_l1(ps)
    pts = ps.points
    n = len(pts)
    if metric is Metric.L2_APPROX:
        mat = [[0.0] * n for _ in range(n)]
        dist = l2_distance
    else:
        mat = [[0] * n for _ in range(n)]
        dist = l1_distance
    for a in range(n):
        row = mat[a]
        for b in range(a + 1, n):
            d = dist(pts[a], pts[b])
            row[b] = d
            mat[b][a] = d
    return mat


def _validate_k(ps: PointSet, k: int) -> None:
    if not 2 <= k <= len(ps):
        raise InfeasibleError(f"k={k} outside 2..{len(ps)}")


def brute_force(
    ps: PointSet,
    k: int,
    metric: Metric = Metric.L1,
    *,
    budget: int = DEFAULT_SUBSET_BUDGET,
    workers: int = 1,
) -> Solution:
    """Exhaustive optimum over all C(n, k) subsets, the oracle.

    Lexicographically smallest index list among equal-weight optima.
    Subset weights are evaluated as naive pair sums over a distance matrix,
    a route independent of the sorted-coefficient formula used elsewhere.
    """
    t0 = time.perf_counter()
    n = len(ps)
    _validate_k(ps, k)
    if metric in (Metric.LINF, Metric.L2_APPROX) and ps.dim != 2:
        raise InfeasibleError(f"metric {metric.value} requires dimension 2")
    n_subsets = comb(n, k)
    if n_subsets > budget:
        raise BudgetExceededError(
            f"C({n},{k}) = {n_subsets} subsets exceed the budget of {budget}"
        )
    dist = _distance_matrix(ps, metric)
    _, pos, evaluated = backend.best_subset(dist, k, workers=workers)
    indices = tuple(pos)
    weight = subset_weight(ps, indices, metric)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return Solution(
        algorithm="brute",
        metric=metric,
        indices=indices,
        weight=weight,
        stats={
            "subsets": evaluated,
            "elapsed_ms": round(elapsed, 3),
            "backend": backend.backend_name(),
            "workers": workers,
        },
    )


def greedy_baseline(ps: PointSet, k: int, metric: Metric = Metric.L1) -> Solution:
    """Greedy insertion from the farthest pair, then swap local search.

    Starts with the maximum-distance pair (ties toward smaller indices),
    repeatedly adds the point with the largest total distance to the chosen
    set, then applies best-improvement single swaps until no swap improves
    the weight. Fully deterministic; no optimality guarantee.
    """
    t0 = time.perf_counter()
    n = len(ps)
    _validate_k(ps, k)
    if metric in (Metric.LINF, Metric.L2_APPROX) and ps.dim != 2:
        raise InfeasibleError(f"metric {metric.value} requires dimension 2")
    dist = _distance_matrix(ps, metric)

    best_d = None
    seed = (0, 1)
    for a in range(n):
        row = dist[a]
        for b in range(a + 1, n):
            if best_d is None or row[b] > best_d:
                best_d = row[b]
                seed = (a, b)
    chosen = [seed[0], seed[1]]
    in_set = [False] * n
    in_set[seed[0]] = True
    in_set[seed[1]] = True
    # gain[p] = total distance from p to the chosen set
    gain = [dist[seed[0]][p] + dist[seed[1]][p] for p in range(n)]

    while len(chosen) < k:
        nxt = None
        nxt_gain = None
        for p in range(n):
            if in_set[p]:
                continue
            if nxt_gain is None or gain[p] > nxt_gain:
                nxt_gain = gain[p]
                nxt = p
        chosen.append(nxt)
        in_set[nxt] = True
        row = dist[nxt]
        for p in range(n):
            gain[p] += row[p]

    swaps = 0
    while True:
        best_delta = 0
        best_swap = None
        for s in sorted(chosen):
            for p in range(n):
                if in_set[p]:
                    continue
                delta = (gain[p] - dist[p][s]) - gain[s]
                if delta > best_delta:
                    best_delta = delta
                    best_swap = (s, p)
        if best_swap is None:
            break
        s, p = best_swap
        chosen.remove(s)
        chosen.append(p)
        in_set[s] = False
        in_set[p] = True
        row_s = dist[s]
        row_p = dist[p]
        for q in range(n):
            gain[q] += row_p[q] - row_s[q]
        swaps += 1

    indices = tuple(sorted(chosen))
    weight = subset_weight(ps, indices, metric)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return Solution(
        algorithm="greedy",
        metric=metric,
        indices=indices,
        weight=weight,
        stats={"swaps": swaps, "elapsed_ms": round(elapsed, 3)},
    )
