"""Exact integer geometry shared by every solver.

Coordinates are signed integers (decimal inputs are scaled at ingestion), so
all rectilinear weights are exact integers and optimality comparisons are
integer equalities, never float tolerances. Chebyshev (L-infinity) distances
are handled through the planar rotation (x, y) -> (x + y, x - y), which turns
them into rectilinear distances at exactly twice the scale; the doubled values
are kept internally and halved only at the reporting boundary. Euclidean mode
is a float-valued reporting metric layered on the same integer coordinates.

Everything here is a pure function over immutable inputs and safe to call
concurrently.
"""

from __future__ import annotations

import heapq
import math
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InfeasibleError

# Per-coordinate magnitude bound enforced at ingestion. Keeps every subset
# weight well inside a 128-bit accumulator even for absurd n and k.
COORD_LIMIT = 1 << 40

Point = tuple[int, ...]
Direction = tuple[int, ...]


class Metric(str, Enum):
    """Distance mode for subset weights.

    L1 and LINF are exact (LINF planar only, via the rotation trick).
    L2_APPROX is a float-valued Euclidean reporting mode; solvers that accept
    it select on rectilinear structure and are heuristic under it.
    """

    L1 = "l1"
    LINF = "linf"
    L2_APPROX = "l2"


class PointSet:
    """Immutable ordered collection of integer points of one dimension.

    Index order is significant: every solver breaks ties by ascending point
    index, so two runs over the same PointSet return identical solutions.
    Duplicate points are allowed.
    """

    __slots__ = ("dim", "points", "_array")

    def __init__(self, points: Iterable[Sequence[int]], dim: int | None = None):
        rows = [tuple(int(c) for c in p) for p in points]
        if not rows:
            raise ValueError("a point set needs at least one point")
        if dim is None:
            dim = len(rows[0])
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        for row in rows:
            if len(row) != dim:
                raise ValueError(
                    f"point {row} has {len(row)} coordinates, expected {dim}"
                )
            for c in row:
                if abs(c) > COORD_LIMIT:
                    raise ValueError(
                        f"coordinate {c} exceeds the magnitude bound 2**40"
                    )
        self.dim = dim
        self.points = tuple(rows)
        self._array: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)}, dim={self.dim})"

    def as_array(self) -> np.ndarray:
        """Coordinates as an int64 array of shape (n, dim), cached."""
        if self._array is None:
            self._array = np.array(self.points, dtype=np.int64)
        return self._array

    def max_abs_coord(self) -> int:
        return max(abs(c) for row in self.points for c in row)


def _check_same_dim(p: Sequence[int], q: Sequence[int]) -> None:
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")


def l1_distance(p: Sequence[int], q: Sequence[int]) -> int:
    """Rectilinear distance, exact: sum over axes of |p_a - q_a|."""
    _check_same_dim(p, q)
    return sum(abs(a - b) for a, b in zip(p, q))


def linf_distance(p: Sequence[int], q: Sequence[int]) -> int:
    """Chebyshev distance, exact: max over axes of |p_a - q_a|."""
    _check_same_dim(p, q)
    return max(abs(a - b) for a, b in zip(p, q))


def l2_distance(p: Sequence[int], q: Sequence[int]) -> float:
    """Euclidean distance as a float of the exact integer squared distance."""
    _check_same_dim(p, q)
    return math.sqrt(sum((a - b) * (a - b) for a, b in zip(p, q)))


def inner_product(p: Sequence[int], c: Sequence[int]) -> int:
    """Exact integer inner product of a point with a direction vector."""
    _check_same_dim(p, c)
    return sum(a * b for a, b in zip(p, c))


def _checked_indices(ps: PointSet, subset: Iterable[int]) -> list[int]:
    idx = [int(i) for i in subset]
    if not idx:
        raise ValueError("subset must contain at least one index")
    seen: set[int] = set()
    for i in idx:
        if not 0 <= i < len(ps):
            raise ValueError(f"index {i} out of range for n={len(ps)}")
        if i in seen:
            raise ValueError(f"duplicate index {i} in subset")
        seen.add(i)
    return idx


def axis_pair_sum(values: Sequence[int]) -> int:
    """Sum of |a - b| over all unordered pairs of a single axis, exact.

    Evaluated by sorting and weighting each order statistic: with values
    sorted ascending, the total equals sum over positions t of
    (2t + 1 - k) * value[t]. This equals the naive pairwise double sum.
    """
    k = len(values)
    return sum((2 * t + 1 - k) * v for t, v in enumerate(sorted(values)))


def _require_planar(ps: PointSet, metric: Metric) -> None:
    if ps.dim != 2:
        raise InfeasibleError(
            f"metric {metric.value} requires dimension 2, got {ps.dim}"
        )


def subset_weight(
    ps: PointSet, subset: Iterable[int], metric: Metric = Metric.L1
) -> int | float:
    """Total pairwise distance within a subset of point indices.

    L1: exact integer, evaluated per axis with the sorted-coefficient form.
    LINF: exact integer at internal doubled scale (rotation identity); the
    true Chebyshev weight is this value divided by two, applied only when
    reporting. L2_APPROX: float sum of Euclidean pair distances.
    """
    idx = _checked_indices(ps, subset)
    if metric is Metric.L2_APPROX:
        _require_planar(ps, metric)
        pts = [ps.points[i] for i in idx]
        total = 0.0
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                total += l2_distance(pts[a], pts[b])
        return total
    if metric is Metric.LINF:
        _require_planar(ps, metric)
        coords: list[Point] = [_rotate_point(ps.points[i]) for i in idx]
    else:
        coords = [ps.points[i] for i in idx]
    return sum(
        axis_pair_sum([c[a] for c in coords]) for a in range(len(coords[0]))
    )


def directional_topk(ps: PointSet, direction: Sequence[int], k: int) -> list[int]:
    """Indices of the k points with the largest inner product with direction.

    Ties break toward the smaller point index; the result is sorted ascending
    by index. Selection, not a full sort: linear in n for fixed k. The
    all-zero direction is allowed and yields the first k indices.
    """
    n = len(ps)
    if not 1 <= k <= n:
        raise InfeasibleError(f"k={k} outside 1..{n}")
    if len(direction) != ps.dim:
        raise ValueError(
            f"direction has {len(direction)} components, expected {ps.dim}"
        )
    d = tuple(direction)
    pts = ps.points

    def key(i: int) -> tuple[int, int]:
        return (-inner_product(pts[i], d), i)

    return sorted(heapq.nsmallest(k, range(n), key=key))


def _rotate_point(p: Point) -> Point:
    return (p[0] + p[1], p[0] - p[1])


def rotate_linf_to_l1(ps: PointSet) -> PointSet:
    """Planar quarter-turn substitute (x, y) -> (x + y, x - y).

    For the transformed set, rectilinear distances equal exactly twice the
    original Chebyshev distances for every pair; the factor two preserves
    argmax, so solvers run unchanged on the rotated coordinates.
    """
    if ps.dim != 2:
        raise InfeasibleError(
            f"the rotation applies to planar sets only, got dim={ps.dim}"
        )
    try:
        return PointSet([_rotate_point(p) for p in ps.points], dim=2)
    except ValueError as exc:
        raise ValueError(f"rotation overflows the coordinate bound: {exc}") from exc


def translate(ps: PointSet, offset: Sequence[int]) -> PointSet:
    """New PointSet with offset added to every point (test/analysis helper)."""
    if len(offset) != ps.dim:
        raise ValueError("offset dimension mismatch")
    off = tuple(int(o) for o in offset)
    return PointSet(
        [tuple(c + o for c, o in zip(p, off)) for p in ps.points], dim=ps.dim
    )
