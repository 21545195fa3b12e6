"""Polynomial-time approximation scheme for variable k in the plane.

The point order along each axis is cut into m strips (rank intervals, so
coordinate ties resolve deterministically and every point lands in exactly
one cell). For every choice of cuts, per-strip quotas, and an m x m count
matrix consistent with those quotas and with cell capacities, each cell
contributes its demanded number of points taken greedily along the cell's
selection direction; the best configuration overall is returned.

For m strips dividing k evenly the returned weight is at least
(1 - f(m)) times the optimum, where f(m) = (5m - 9) / (2(m - 1)(m - 2)) is
the bound fraction; f(4) = 11/12, and f decreases toward zero, so any
target accuracy is reachable by raising m at a cost exponential in m.
When m does not divide k, quotas mix floor(k/m) and ceil(k/m) and the same
machinery runs, but only the divisible case carries the proven bound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterator, Sequence

from . import backend
from ._kernels_py import _count_matrices
from .errors import BudgetExceededError, InfeasibleError
from .geometry import Direction, Metric, PointSet, rotate_linf_to_l1, subset_weight
from .solution import Solution

DEFAULT_CONFIG_BUDGET = 10**9


@dataclass(frozen=True)
class PtasParams:
    """Tuning for one approximation-scheme run.

    m is the number of strips per axis (at least 3; the guarantee is
    nonvacuous only for m >= 4). The budget caps the worst-case number of
    enumerated configurations; exceeding it fails fast and loudly instead of
    running unbounded.
    """

    m: int = 4
    metric: Metric = Metric.L1
    budget: int = DEFAULT_CONFIG_BUDGET
    workers: int = 1

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"m must be at least 3, got {self.m}")
        if self.budget < 1:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class CellConfig:
    """One enumeration state: rank cuts per axis plus the cell count matrix.

    counts[j][i] is the number of points demanded from the cell in x-strip i
    and y-strip j; row sums are the y-strip quotas and column sums the
    x-strip quotas.
    """

    x_splits: tuple[int, ...]
    y_splits: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.x_splits) + 1

    def k(self) -> int:
        return sum(sum(row) for row in self.counts)


def bound_fraction(m: int) -> Fraction:
    """Exact neglected fraction f(m) = (5m - 9) / (2(m - 1)(m - 2)).

    The scheme guarantees weight >= (1 - f(m)) * OPT when m divides k;
    f(4) = 11/12 and f is strictly decreasing for m >= 4.
    """
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    return Fraction(5 * m - 9, 2 * (m - 1) * (m - 2))


def choose_m(epsilon: Fraction | int | str | float) -> int:
    """Smallest m >= 4 whose guarantee is within (1 + epsilon) of optimal.

    Exact rational arithmetic: the condition 1 / (1 - f(m)) <= 1 + epsilon
    is equivalent to f(m) <= epsilon / (1 + epsilon); equality accepts the
    smaller m.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    target = eps / (1 + eps)
    m = 4
    while bound_fraction(m) > target:
        m += 1
    return m


def enumerate_splits(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All nondecreasing cut tuples (s_1..s_{m-1}) with 0 <= s_i <= n.

    Cuts are positions in the axis rank order (points sorted by coordinate,
    then index); strips are the rank intervals between consecutive cuts.
    Lexicographic order; C(n + m - 1, m - 1) tuples in total.
    """
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return combinations_with_replacement(range(n + 1), m - 1)


def strip_quotas(k: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Admissible per-strip selection quotas for one axis.

    When m divides k, the single balanced vector (k/m, ..., k/m). Otherwise
    every vector with entries in {floor(k/m), ceil(k/m)} summing to k, in
    the order given by the positions of the ceiling entries.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if k < m:
        raise InfeasibleError(f"k={k} is smaller than the strip count m={m}")
    lo, rem = divmod(k, m)
    if rem == 0:
        return ((lo,) * m,)
    out = []
    for hi_positions in combinations(range(m), rem):
        vec = [lo] * m
        for p in hi_positions:
            vec[p] = lo + 1
        out.append(tuple(vec))
    return tuple(out)


def enumerate_count_matrices(
    col_sums: Sequence[int],
    row_sums: Sequence[int],
    capacities: Sequence[Sequence[int]] | None = None,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every nonnegative integer matrix with the given margins.

    Row r sums to row_sums[r], column c to col_sums[c], and entry (r, c)
    never exceeds capacities[r][c] (unbounded when capacities is None).
    Backtracking with capacity pruning; deterministic order, rows filled
    top to bottom with entries tried high to low. Yields an empty stream
    when the margins are infeasible.
    """
    m = len(col_sums)
    if len(row_sums) != m:
        raise ValueError("margins must have equal length")
    if sum(col_sums) != sum(row_sums):
        raise ValueError(
            f"margin totals differ: {sum(col_sums)} vs {sum(row_sums)}"
        )
    if capacities is None:
        caps = [min(row_sums[j], col_sums[i]) for j in range(m) for i in range(m)]
    else:
        caps = [int(capacities[j][i]) for j in range(m) for i in range(m)]
    for mat in _count_matrices(tuple(col_sums), tuple(row_sums), caps, m):
        yield tuple(tuple(row) for row in mat)


def cell_direction(i: int, j: int, m: int) -> Direction:
    """Selection direction (2i + 1 - m, 2j + 1 - m) for the cell in
    x-strip i and y-strip j.

    The positive per-strip scale factor that a quota-weighted variant would
    carry is dropped: directional selection is invariant under positive
    scaling.
    """
    if not (0 <= i < m and 0 <= j < m):
        raise ValueError(f"cell ({i},{j}) outside an {m}x{m} grid")
    return (2 * i + 1 - m, 2 * j + 1 - m)


def _bounded_compositions(total: int, bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if len(bounds) == 1:
        if 0 <= total <= bounds[0]:
            yield (total,)
        return
    head = bounds[0]
    rest = bounds[1:]
    rest_cap = sum(rest)
    for v in range(min(head, total), max(0, total - rest_cap) - 1, -1):
        for tail in _bounded_compositions(total - v, rest):
            yield (v, *tail)


@lru_cache(maxsize=None)
def _margin_matrix_count(
    col_sums: tuple[int, ...], row_sums: tuple[int, ...], state_cap: int = 200_000
) -> int | None:
    """Exact count of margin matrices ignoring capacities, or None when the
    dynamic program would need more than state_cap states."""
    states: dict[tuple[int, ...], int] = {col_sums: 1}
    for r in row_sums:
        nxt: dict[tuple[int, ...], int] = {}
        for state, ways in states.items():
            for compo in _bounded_compositions(r, state):
                key = tuple(s - c for s, c in zip(state, compo))
                nxt[key] = nxt.get(key, 0) + ways
            if len(nxt) > state_cap:
                return None
        states = nxt
    return states.get(tuple(0 for _ in col_sums), 0)


def worst_case_config_count(n: int, m: int, k: int) -> int:
    """Upper bound on the configurations one solve may evaluate.

    Per admissible quota vector there are C(n - k + m - 1, m - 1) compatible
    cut tuples per axis; multiplied by the capacity-free matrix count per
    quota pair. Capacity pruning only shrinks the real number, so comparing
    this bound against the budget before running keeps the guard
    deterministic for any worker count.
    """
    quotas = strip_quotas(k, m)
    per_axis = comb(n - k + m - 1, m - 1)
    total_matrices = 0
    for qx in quotas:
        for qy in quotas:
            cnt = _margin_matrix_count(qx, qy)
            if cnt is None:
                cnt = math.prod(comb(q + m - 1, m - 1) for q in qy)
            total_matrices += cnt
    return per_axis * per_axis * total_matrices


def _cuts_with_min_sizes(n: int, m: int, min_size: int) -> list[tuple[int, ...]]:
    """Cut tuples whose m strip sizes are all at least min_size, in
    lexicographic order. Cuts with any smaller strip admit no feasible
    count matrix, so skipping them is pure pruning."""
    out: list[tuple[int, ...]] = []
    cuts: list[int] = []

    def rec(i: int, prev: int) -> None:
        if i == m - 1:
            out.append(tuple(cuts))
            return
        hi = n - min_size * (m - 1 - i)
        for s in range(prev + min_size, hi + 1):
            cuts.append(s)
            rec(i + 1, s)
            cuts.pop()

    rec(0, 0)
    return out


def _axis_ranks(coords: Sequence[tuple[int, int]], axis: int) -> list[int]:
    order = sorted(range(len(coords)), key=lambda p: (coords[p][axis], p))
    ranks = [0] * len(coords)
    for r, p in enumerate(order):
        ranks[p] = r
    return ranks


def solve_ptas(ps: PointSet, k: int, params: PtasParams | None = None) -> Solution:
    """Best-of-all-configurations strip/cell selection.

    Exact arithmetic throughout; ties resolve to the lexicographically
    smallest index list, so the result is identical for every worker count.
    LINF runs on rotated coordinates; L2_APPROX selects on the rectilinear
    structure and reports the Euclidean weight of the chosen set.

    Raises BudgetExceededError (before any enumeration) when the worst-case
    configuration count exceeds the budget, and InfeasibleError for k < m,
    k > n, or nonplanar input.
    """
    t0 = time.perf_counter()
    if params is None:
        params = PtasParams()
    m = params.m
    metric = params.metric
    if ps.dim != 2:
        raise InfeasibleError(
            f"the approximation scheme is planar, got dim={ps.dim}"
        )
    n = len(ps)
    if not m <= k <= n:
        raise InfeasibleError(f"k={k} outside {m}..{n}")
    base = rotate_linf_to_l1(ps) if metric is Metric.LINF else ps

    worst = worst_case_config_count(n, m, k)
    if worst > params.budget:
        raise BudgetExceededError(
            f"worst-case configuration count {worst} exceeds the budget of "
            f"{params.budget}"
        )

    quotas = strip_quotas(k, m)
    coords = list(base.points)
    rank_x = _axis_ranks(coords, 0)
    rank_y = _axis_ranks(coords, 1)
    cuts = _cuts_with_min_sizes(n, m, k // m)

    result = backend.ptas_search(
        coords,
        rank_x,
        rank_y,
        m,
        k,
        cuts,
        cuts,
        quotas,
        quotas,
        workers=params.workers,
        max_abs_coord=base.max_abs_coord(),
    )
    if result is None:
        raise InfeasibleError("no feasible strip/cell configuration")
    _, indices, best_xc, best_yc, counts, configs, pairs = result
    weight = subset_weight(ps, indices, metric)
    elapsed = (time.perf_counter() - t0) * 1000.0
    config = CellConfig(x_splits=best_xc, y_splits=best_yc, counts=counts)
    return Solution(
        algorithm="ptas",
        metric=metric,
        indices=indices,
        weight=weight,
        stats={
            "m": m,
            "bound_fraction": str(bound_fraction(m)),
            "configs": configs,
            "split_pairs": pairs,
            "cut_tuples": len(cuts),
            "elapsed_ms": round(elapsed, 3),
            "backend": backend.backend_name(),
            "workers": params.workers,
            "best_config": {
                "x_splits": list(config.x_splits),
                "y_splits": list(config.y_splits),
                "counts": [list(row) for row in config.counts],
            },
        },
    )


def assign_cells(
    ps: PointSet, config: CellConfig, metric: Metric = Metric.L1
) -> dict[tuple[int, int], list[int]]:
    """Cell membership (x-strip, y-strip) -> point indices for a config,
    using the same rank-interval rule as the solver (rotated for LINF)."""
    base = rotate_linf_to_l1(ps) if metric is Metric.LINF else ps
    coords = list(base.points)
    rank_x = _axis_ranks(coords, 0)
    rank_y = _axis_ranks(coords, 1)

    def strip(rank: int, cuts: tuple[int, ...]) -> int:
        s = 0
        for c in cuts:
            if rank >= c:
                s += 1
        return s

    cells: dict[tuple[int, int], list[int]] = {}
    for p in range(len(ps)):
        key = (strip(rank_x[p], config.x_splits), strip(rank_y[p], config.y_splits))
        cells.setdefault(key, []).append(p)
    return cells
