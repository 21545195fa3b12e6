"""Exact optimal k-subset selection for fixed k.

The candidate set is the union, over a fixed family of integer directions,
of the k points extreme in each direction. The family consists of all
component tuples (2*i + 1 - k) for i in 0..k-1 per axis (k**d directions),
so the union holds at most k**(d+1) points and provably contains an optimal
subset under rectilinear distances. Exhaustive search over the union then
returns an exact optimum; its cost is independent of n, so the whole solve
is linear in n for fixed k and d.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from math import comb

from . import backend
from .errors import BudgetExceededError, InfeasibleError
from .geometry import Direction, Metric, PointSet, rotate_linf_to_l1, subset_weight
from .geometry import directional_topk
from .solution import Solution

DEFAULT_SUBSET_BUDGET = 10**8


@dataclass(frozen=True)
class DirectionFamily:
    """All selection directions probed for a given subset size and dimension."""

    k: int
    d: int
    directions: tuple[Direction, ...]

    def __len__(self) -> int:
        return len(self.directions)


def enumerate_directions(k: int, d: int) -> DirectionFamily:
    """The k**d integer directions with components in {2*i + 1 - k}.

    Deterministic lexicographic order over the index tuples. Components are
    odd when k is even and always lie in [1-k, k-1]; the zero vector appears
    exactly when k is odd (all indices at the midpoint).
    """
    if k < 2:
        raise ValueError(f"subset size must be at least 2, got {k}")
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    dirs = tuple(
        tuple(2 * i + 1 - k for i in idx) for idx in product(range(k), repeat=d)
    )
    return DirectionFamily(k=k, d=d, directions=dirs)


def candidate_union(ps: PointSet, k: int) -> list[int]:
    """Sorted union of the directional top-k selections over the family.

    Contains at most min(n, k**(d+1)) indices and always contains some
    optimal k-subset.
    """
    if not 2 <= k <= len(ps):
        raise InfeasibleError(f"k={k} outside 2..{len(ps)}")
    family = enumerate_directions(k, ps.dim)
    seen: set[int] = set()
    for direction in family.directions:
        seen.update(directional_topk(ps, direction, k))
    return sorted(seen)


def _pair_matrix(ps: PointSet, indices: list[int], metric: Metric):
    """Full pairwise distance matrix over the listed points.

    Integer entries for L1 (and for LINF, already rotated upstream), float
    for the Euclidean mode. This is the naive per-pair evaluation route,
    independent of the sorted-coefficient route used by subset_weight.
    """
    pts = [ps.points[i] for i in indices]
    c = len(pts)
    if metric is Metric.L2_APPROX:
        from .geometry import l2_distance

        mat = [[0.0] * c for _ in range(c)]
        for a in range(c):
            for b in range(a + 1, c):
                dd = l2_distance(pts[a], pts[b])
                mat[a][b] = dd
                mat[b][a] = dd
        return mat
    from .geometry import l1_distance

    mat = [[0] * c for _ in range(c)]
    for a in range(c):
        for b in range(a + 1, c):
            dd = l1_distance(pts[a], pts[b])
            mat[a][b] = dd
            mat[b][a] = dd
    return mat


def solve_fixed_k(
    ps: PointSet,
    k: int,
    metric: Metric = Metric.L1,
    *,
    budget: int = DEFAULT_SUBSET_BUDGET,
    workers: int = 1,
) -> Solution:
    """Exact maximum-weight k-subset (L1/LINF); heuristic under L2_APPROX.

    Every k-subset of the directional candidate union is evaluated; among
    equal-weight optima the lexicographically smallest index list is
    returned. LINF runs on rotated coordinates. Under L2_APPROX the
    candidates still come from the rectilinear direction family, so the
    result carries no optimality guarantee (documented heuristic).

    Raises BudgetExceededError when the subset count would exceed `budget`.
    """
    t0 = time.perf_counter()
    n = len(ps)
    if not 2 <= k <= n:
        raise InfeasibleError(f"k={k} outside 2..{n}")
    if metric is Metric.LINF:
        work = rotate_linf_to_l1(ps)
        eval_metric = Metric.L1
    else:
        work = ps
        eval_metric = metric
    cand = candidate_union(work, k)
    n_subsets = comb(len(cand), k)
    if n_subsets > budget:
        raise BudgetExceededError(
            f"{n_subsets} candidate subsets exceed the budget of {budget}"
        )
    dist = _pair_matrix(work, cand, eval_metric)
    _, pos, evaluated = backend.best_subset(dist, k, workers=workers)
    indices = tuple(cand[p] for p in pos)
    weight = subset_weight(ps, indices, metric)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return Solution(
        algorithm="fixed-k",
        metric=metric,
        indices=indices,
        weight=weight,
        stats={
            "directions": k**ps.dim,
            "candidates": len(cand),
            "subsets": evaluated,
            "elapsed_ms": round(elapsed, 3),
            "backend": backend.backend_name(),
            "workers": workers,
        },
    )
