"""Kernel backend selection and worker orchestration.

The compiled extension is used when it imported successfully, the work fits
signed 64-bit arithmetic, and DISPERSION_PURE is not set; otherwise the
pure-Python kernels run (exact at any magnitude, much slower). Worker
parallelism chunks the enumeration space deterministically: results are
reduced by (weight, lexicographic index order), so the outcome is identical
for every worker count and backend.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels_py as _pure

if os.environ.get("DISPERSION_PURE"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

HAVE_COMPILED = _compiled is not None

# Largest |weight| the compiled int64 kernels may produce without overflow.
_INT64_SAFE = 1 << 62


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "pure"


def _spans(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous near-equal spans."""
    parts = max(1, min(parts, total)) if total else 1
    out = []
    base, extra = divmod(total, parts)
    lo = 0
    for p in range(parts):
        hi = lo + base + (1 if p < extra else 0)
        if hi > lo:
            out.append((lo, hi))
        lo = hi
    return out or [(0, 0)]


def _first_element_spans(n: int, k: int, workers: int) -> list[tuple[int, int]]:
    """Chunk combinations by smallest element, balancing combination counts."""
    top = n - k + 1
    if workers <= 1 or top <= 1:
        return [(0, top)]
    counts = [comb(n - 1 - f, k - 1) for f in range(top)]
    total = sum(counts)
    target = total / workers
    spans = []
    lo = 0
    acc = 0
    for f in range(top):
        acc += counts[f]
        if acc >= target and len(spans) < workers - 1:
            spans.append((lo, f + 1))
            lo = f + 1
            acc = 0
    if lo < top:
        spans.append((lo, top))
    return spans


def _run_chunks(fn, spans, workers):
    if workers <= 1 or len(spans) <= 1:
        return [fn(lo, hi) for lo, hi in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in spans]
        return [f.result() for f in futures]


def best_subset(
    dist: Sequence[Sequence[int | float]], k: int, *, workers: int = 1
) -> tuple[int | float, tuple[int, ...], int]:
    """Max-weight k-subset positions over a full pairwise distance matrix.

    Returns (weight, positions, evaluated). Ties resolve to the
    lexicographically smallest position tuple. The caller guarantees
    1 <= k <= n and that the evaluation count fits its budget.
    """
    n = len(dist)
    is_int = isinstance(dist[0][0], int)
    use_compiled = HAVE_COMPILED
    if use_compiled and is_int:
        mx = max((max(row) for row in dist), default=0)
        use_compiled = mx * comb(k, 2) < _INT64_SAFE

    spans = _first_element_spans(n, k, workers)
    if use_compiled:
        arr = np.array(dist, dtype=np.int64 if is_int else np.float64)
        fn = lambda lo, hi: _compiled.best_subset(arr, k, lo, hi)
    else:
        fn = lambda lo, hi: _pure.best_subset(dist, k, lo, hi)
    results = _run_chunks(fn, spans, workers)

    best = None
    evaluated = 0
    for found, w, pos, cnt in results:
        evaluated += cnt
        if not found:
            continue
        pos = tuple(int(p) for p in pos)
        if is_int:
            w = int(w)
        if best is None or w > best[0] or (w == best[0] and pos < best[1]):
            best = (w, pos)
    if best is None:
        raise ValueError("no subset enumerated")
    return best[0], best[1], evaluated


def ptas_search(
    coords: Sequence[tuple[int, int]],
    rank_x: Sequence[int],
    rank_y: Sequence[int],
    m: int,
    k: int,
    x_cuts: Sequence[Sequence[int]],
    y_cuts: Sequence[Sequence[int]],
    qx_list: Sequence[Sequence[int]],
    qy_list: Sequence[Sequence[int]],
    *,
    workers: int = 1,
    max_abs_coord: int,
):
    """Best strip/cell configuration over the full cut/quota space.

    Returns (weight, indices, x_cuts, y_cuts, counts, configs, pairs) or
    None when no configuration is feasible.
    """
    use_compiled = HAVE_COMPILED and 2 * k * max(k - 1, 1) * max_abs_coord < _INT64_SAFE
    spans = _spans(len(x_cuts), workers)
    if use_compiled:
        coords_a = np.ascontiguousarray(coords, dtype=np.int64)
        rx = np.ascontiguousarray(rank_x, dtype=np.int32)
        ry = np.ascontiguousarray(rank_y, dtype=np.int32)
        xc = np.ascontiguousarray(x_cuts, dtype=np.int64).reshape(len(x_cuts), m - 1)
        yc = np.ascontiguousarray(y_cuts, dtype=np.int64).reshape(len(y_cuts), m - 1)
        qx = np.ascontiguousarray(qx_list, dtype=np.int64).reshape(len(qx_list), m)
        qy = np.ascontiguousarray(qy_list, dtype=np.int64).reshape(len(qy_list), m)
        fn = lambda lo, hi: _compiled.ptas_search(
            coords_a, rx, ry, m, k, xc, yc, qx, qy, lo, hi
        )
    else:
        fn = lambda lo, hi: _pure.ptas_search(
            coords, rank_x, rank_y, m, k, x_cuts, y_cuts, qx_list, qy_list, lo, hi
        )
    results = _run_chunks(fn, spans, workers)

    best = None
    configs = 0
    pairs = 0
    for found, w, sel, bxc, byc, counts, cfg, prs in results:
        configs += cfg
        pairs += prs
        if not found:
            continue
        sel = tuple(int(p) for p in sel)
        w = int(w)
        if best is None or w > best[0] or (w == best[0] and sel < best[1]):
            best = (
                w,
                sel,
                tuple(int(c) for c in bxc),
                tuple(int(c) for c in byc),
                tuple(tuple(int(v) for v in row) for row in counts),
            )
    if best is None:
        return None
    return (*best, configs, pairs)
