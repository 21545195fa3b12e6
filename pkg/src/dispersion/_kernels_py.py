"""Pure-Python enumeration kernels.

Reference implementations of the two hot loops, mirrored by the compiled
extension in ``_kernels.pyx``. Python integers keep every weight exact with
no overflow concern, which also makes this path the fallback whenever the
compiled int64 kernels could overflow. Accumulation order matches the
compiled kernels so float results are bit-identical across backends.
"""

from __future__ import annotations

from typing import Sequence


def best_subset(
    dist: Sequence[Sequence[int | float]],
    k: int,
    first_lo: int,
    first_hi: int,
):
    """Exhaustive max-weight k-subset over a pairwise distance matrix.

    Enumerates, in lexicographic order, every k-combination of 0..n-1 whose
    smallest element lies in [first_lo, first_hi); the range makes the combo
    space chunkable for worker parallelism. Keeps the first maximum found,
    which is the lexicographically smallest optimum.

    Returns (found, weight, positions, evaluated).
    """
    n = len(dist)
    best_w = None
    best_c: tuple[int, ...] | None = None
    count = 0
    if k < 1 or k > n:
        return False, 0, None, 0
    combo = [0] * k
    # acc[j] = weight of all pairs within combo[0..j]
    acc = [0] * k
    for first in range(first_lo, min(first_hi, n - k + 1)):
        combo[0] = first
        for j in range(1, k):
            combo[j] = first + j
        pos = 1  # lowest position whose pair sums need recomputing
        while True:
            for j in range(max(pos, 1), k):
                row = dist[combo[j]]
                s = row[combo[0]]
                for t in range(1, j):
                    s = s + row[combo[t]]
                acc[j] = acc[j - 1] + s
            count += 1
            w = acc[k - 1] if k > 1 else 0
            if best_w is None or w > best_w:
                best_w = w
                best_c = tuple(combo)
            # advance to the next combination keeping combo[0] fixed
            j = k - 1
            while j >= 1 and combo[j] == n - k + j:
                j -= 1
            if j < 1:
                break
            combo[j] += 1
            for t in range(j + 1, k):
                combo[t] = combo[t - 1] + 1
            pos = j
    if best_c is None:
        return False, 0, None, 0
    return True, best_w, best_c, count


def _strip_of(rank: int, cuts: Sequence[int]) -> int:
    s = 0
    for c in cuts:
        if rank >= c:
            s += 1
        else:
            break
    return s


def _strip_sizes(cuts: Sequence[int], n: int) -> list[int]:
    bounds = [0, *cuts, n]
    return [bounds[i + 1] - bounds[i] for i in range(len(cuts) + 1)]


def _weight_l1(coords: Sequence[tuple[int, int]], sel: Sequence[int]) -> int:
    k = len(sel)
    xs = sorted(coords[p][0] for p in sel)
    ys = sorted(coords[p][1] for p in sel)
    wx = 0
    wy = 0
    for t in range(k):
        coef = 2 * t + 1 - k
        wx += coef * xs[t]
        wy += coef * ys[t]
    return wx + wy


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
    row_lo: int,
    row_hi: int,
):
    """Strip/cell configuration search over a chunk of x-axis cut tuples.

    For every (x cuts, y cuts, column quotas, row quotas, count matrix)
    configuration: each point belongs to exactly one cell (rank intervals),
    each cell contributes its demanded count of points taken greedily along
    the cell's selection direction, and the union's rectilinear weight is
    evaluated. Ties between equal-weight selections resolve to the
    lexicographically smallest index list so the result is independent of
    chunking.

    Returns (found, weight, indices, x_cuts, y_cuts, counts, configs, pairs).
    """
    n = len(coords)
    cdx = [2 * i + 1 - m for i in range(m)]
    cdy = [2 * j + 1 - m for j in range(m)]
    best: tuple | None = None
    configs = 0
    pairs = 0

    for xi in range(row_lo, row_hi):
        xc = x_cuts[xi]
        xstrip = [_strip_of(rank_x[p], xc) for p in range(n)]
        xsizes = _strip_sizes(xc, n)
        for yc in y_cuts:
            ystrip = [_strip_of(rank_y[p], yc) for p in range(n)]
            ysizes = _strip_sizes(yc, n)
            pairs += 1
            cells: list[list[tuple[int, int]]] = [[] for _ in range(m * m)]
            for p in range(n):
                i = xstrip[p]
                j = ystrip[p]
                pr = cdx[i] * coords[p][0] + cdy[j] * coords[p][1]
                cells[j * m + i].append((-pr, p))
            members: list[list[int]] = []
            for cell in cells:
                cell.sort()
                members.append([p for _, p in cell])
            caps = [len(mem) for mem in members]
            for qx in qx_list:
                if any(xsizes[i] < qx[i] for i in range(m)):
                    continue
                for qy in qy_list:
                    if any(ysizes[j] < qy[j] for j in range(m)):
                        continue
                    for counts in _count_matrices(qx, qy, caps, m):
                        configs += 1
                        sel: list[int] = []
                        for j in range(m):
                            base = j * m
                            for i in range(m):
                                c = counts[j][i]
                                if c:
                                    sel.extend(members[base + i][:c])
                        sel.sort()
                        w = _weight_l1(coords, sel)
                        if (
                            best is None
                            or w > best[0]
                            or (w == best[0] and sel < best[1])
                        ):
                            best = (
                                w,
                                sel,
                                tuple(xc),
                                tuple(yc),
                                tuple(tuple(r) for r in counts),
                            )
    if best is None:
        return False, 0, None, None, None, None, configs, pairs
    w, sel, xc, yc, counts = best
    return True, w, tuple(sel), xc, yc, counts, configs, pairs


def _count_matrices(col_sums, row_sums, caps, m):
    """Yield every matrix with the given margins, entry (j, i) <= caps[j*m+i].

    Rows are filled top to bottom, entries high to low, with a remaining-
    capacity lower bound pruning dead branches early.
    """
    col_rem = list(col_sums)
    rows_out: list[list[int]] = []

    def fill_row(j):
        if j == m:
            yield [list(r) for r in rows_out]
            return
        cur = [0] * m
        cap_row = caps[j * m : j * m + m]

        def fill_cell(i, rem):
            if i == m:
                if rem == 0:
                    rows_out.append(cur)
                    yield from fill_row(j + 1)
                    rows_out.pop()
                return
            suffix = 0
            for i2 in range(i + 1, m):
                suffix += min(cap_row[i2], col_rem[i2])
            hi = min(rem, col_rem[i], cap_row[i])
            lo = max(0, rem - suffix)
            for v in range(hi, lo - 1, -1):
                cur[i] = v
                col_rem[i] -= v
                yield from fill_cell(i + 1, rem - v)
                col_rem[i] += v
            cur[i] = 0

        yield from fill_cell(0, row_sums[j])

    yield from fill_row(0)
