"""Solver result record shared by the exact, approximate, and baseline solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .geometry import Metric


@dataclass(frozen=True)
class Solution:
    """A selected k-subset with its exact weight and provenance.

    ``weight`` is the internal value: an exact integer for L1 and for LINF
    (doubled Chebyshev scale), a float for L2_APPROX. ``reported_weight``
    applies the reporting transform (LINF halving, 12 significant digits for
    Euclidean). ``indices`` are sorted ascending and recomputable: weight
    always equals ``subset_weight(ps, indices, metric)``.
    """

    algorithm: str
    metric: Metric
    indices: tuple[int, ...]
    weight: int | float
    stats: Mapping[str, Any] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.indices)

    def reported_weight(self) -> str:
        return format_weight(self.weight, self.metric)


def format_weight(weight: int | float, metric: Metric) -> str:
    """Reporting form of an internal weight value.

    LINF internal weights are always even (rotation identity); the reported
    value is the exact half. L2_APPROX reports 12 significant digits.
    """
    if metric is Metric.L2_APPROX:
        return f"{float(weight):.12g}"
    if metric is Metric.LINF:
        w = int(weight)
        if w % 2:
            raise ValueError(f"internal Chebyshev weight {w} is not even")
        return str(w // 2)
    return str(int(weight))
