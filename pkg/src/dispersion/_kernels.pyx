# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Exact mirrors of ``_kernels_py``: same enumeration order, tie rules, and
accumulation order, so results (including float sums) are identical across
backends. Arithmetic is int64; callers guard magnitudes upstream and fall
back to the pure kernels when a sum could overflow. The heavy loops release
the GIL, so worker threads parallelize chunked calls.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32

ctypedef fused num_t:
    i64
    double


def best_subset(num_t[:, ::1] dist, int k, int first_lo, int first_hi):
    """Exhaustive max-weight k-subset with smallest element in
    [first_lo, first_hi). Returns (found, weight, positions, evaluated)."""
    cdef int n = dist.shape[0]
    cdef int top = n - k + 1
    cdef bint found = False
    cdef num_t best_w = 0
    cdef num_t s, w
    cdef long long count = 0
    cdef int first, j, t, pos
    cdef int* combo
    cdef int* best_c
    cdef num_t* acc

    if k < 1 or k > n:
        return False, 0, None, 0
    if first_hi > top:
        first_hi = top

    combo = <int*> malloc(k * sizeof(int))
    best_c = <int*> malloc(k * sizeof(int))
    acc = <num_t*> malloc(k * sizeof(num_t))
    if combo == NULL or best_c == NULL or acc == NULL:
        free(combo); free(best_c); free(acc)
        raise MemoryError()

    try:
        with nogil:
            acc[0] = 0
            for first in range(first_lo, first_hi):
                combo[0] = first
                for j in range(1, k):
                    combo[j] = first + j
                pos = 1
                while True:
                    for j in range(pos, k):
                        s = dist[combo[j], combo[0]]
                        for t in range(1, j):
                            s = s + dist[combo[j], combo[t]]
                        acc[j] = acc[j - 1] + s
                    count += 1
                    w = acc[k - 1] if k > 1 else 0
                    if (not found) or w > best_w:
                        found = True
                        best_w = w
                        for j in range(k):
                            best_c[j] = combo[j]
                    j = k - 1
                    while j >= 1 and combo[j] == n - k + j:
                        j -= 1
                    if j < 1:
                        break
                    combo[j] += 1
                    for t in range(j + 1, k):
                        combo[t] = combo[t - 1] + 1
                    pos = j
        if not found:
            return False, 0, None, count
        out = np.empty(k, dtype=np.int64)
        for j in range(k):
            out[j] = best_c[j]
        return True, best_w, out, count
    finally:
        free(combo)
        free(best_c)
        free(acc)


cdef struct Ctx:
    int n, m, k, mm
    i64* coords        # n x 2, row-major
    int* members       # cell-bucketed point ids, cells contiguous
    i64* proj          # selection projections aligned with members
    int* cell_start    # mm + 1 offsets into members
    int* cell_len
    int* K             # current count matrix, flat j*m + i
    i64* col_rem
    i64* qy_row        # row sums of the current quota vector
    i64* cur_xc        # current cut tuples (m-1 each)
    i64* cur_yc
    int* sel           # scratch: selected point ids
    i64* selx
    i64* sely
    long long configs
    bint found
    i64 best_w
    int* best_sel
    i64* best_xc
    i64* best_yc
    int* best_K


cdef void _leaf(Ctx* c) nogil:
    cdef int cnt = 0, cell, t, u, key
    cdef i64 keyv, coef, wx, wy, w
    c.configs += 1
    for cell in range(c.mm):
        for t in range(c.K[cell]):
            c.sel[cnt] = c.members[c.cell_start[cell] + t]
            cnt += 1
    # sort selected ids ascending
    for t in range(1, c.k):
        key = c.sel[t]
        u = t - 1
        while u >= 0 and c.sel[u] > key:
            c.sel[u + 1] = c.sel[u]
            u -= 1
        c.sel[u + 1] = key
    for t in range(c.k):
        c.selx[t] = c.coords[2 * c.sel[t]]
        c.sely[t] = c.coords[2 * c.sel[t] + 1]
    for t in range(1, c.k):
        keyv = c.selx[t]
        u = t - 1
        while u >= 0 and c.selx[u] > keyv:
            c.selx[u + 1] = c.selx[u]
            u -= 1
        c.selx[u + 1] = keyv
    for t in range(1, c.k):
        keyv = c.sely[t]
        u = t - 1
        while u >= 0 and c.sely[u] > keyv:
            c.sely[u + 1] = c.sely[u]
            u -= 1
        c.sely[u + 1] = keyv
    wx = 0
    wy = 0
    for t in range(c.k):
        coef = 2 * t + 1 - c.k
        wx += coef * c.selx[t]
        wy += coef * c.sely[t]
    w = wx + wy

    cdef bint better = 0
    if not c.found or w > c.best_w:
        better = 1
    elif w == c.best_w:
        for t in range(c.k):
            if c.sel[t] != c.best_sel[t]:
                better = c.sel[t] < c.best_sel[t]
                break
    if better:
        c.found = 1
        c.best_w = w
        for t in range(c.k):
            c.best_sel[t] = c.sel[t]
        for t in range(c.m - 1):
            c.best_xc[t] = c.cur_xc[t]
            c.best_yc[t] = c.cur_yc[t]
        for t in range(c.mm):
            c.best_K[t] = c.K[t]


cdef void _fill(Ctx* c, int j, int i, i64 rem) nogil:
    cdef i64 suffix, hi, lo, v
    cdef int i2, base
    if i == c.m:
        if j + 1 == c.m:
            _leaf(c)
        else:
            _fill(c, j + 1, 0, c.qy_row[j + 1])
        return
    base = j * c.m
    suffix = 0
    for i2 in range(i + 1, c.m):
        if c.cell_len[base + i2] < c.col_rem[i2]:
            suffix += c.cell_len[base + i2]
        else:
            suffix += c.col_rem[i2]
    hi = rem
    if c.col_rem[i] < hi:
        hi = c.col_rem[i]
    if c.cell_len[base + i] < hi:
        hi = c.cell_len[base + i]
    lo = rem - suffix
    if lo < 0:
        lo = 0
    v = hi
    while v >= lo:
        c.K[base + i] = v
        c.col_rem[i] -= v
        _fill(c, j, i + 1, rem - v)
        c.col_rem[i] += v
        v -= 1
    c.K[base + i] = 0


def ptas_search(i64[:, ::1] coords, i32[::1] rank_x, i32[::1] rank_y,
                int m, int k,
                i64[:, ::1] x_cuts, i64[:, ::1] y_cuts,
                i64[:, ::1] qx, i64[:, ::1] qy,
                int row_lo, int row_hi):
    """Strip/cell configuration search over x-cut rows [row_lo, row_hi).

    Returns (found, weight, indices, x_cuts, y_cuts, counts, configs, pairs).
    """
    cdef int n = coords.shape[0]
    cdef int mm = m * m
    cdef int n_yc = y_cuts.shape[0]
    cdef int n_qx = qx.shape[0]
    cdef int n_qy = qy.shape[0]
    cdef long long pairs = 0
    cdef int xi, yi, a, b, p, i, j, t, u, cell, start, key, r, s
    cdef i64 keyv
    cdef bint ok

    cdef Ctx c
    c.n = n; c.m = m; c.k = k; c.mm = mm
    c.configs = 0
    c.found = 0
    c.best_w = 0

    cdef int* xstrip = <int*> malloc(n * sizeof(int))
    cdef int* ystrip = <int*> malloc(n * sizeof(int))
    cdef i64* xsizes = <i64*> malloc(m * sizeof(i64))
    cdef i64* ysizes = <i64*> malloc(m * sizeof(i64))
    cdef int* cdx = <int*> malloc(m * sizeof(int))
    cdef int* cdy = <int*> malloc(m * sizeof(int))
    cdef int* fill_pos = <int*> malloc(mm * sizeof(int))
    c.members = <int*> malloc(n * sizeof(int))
    c.proj = <i64*> malloc(n * sizeof(i64))
    c.cell_start = <int*> malloc((mm + 1) * sizeof(int))
    c.cell_len = <int*> malloc(mm * sizeof(int))
    c.K = <int*> malloc(mm * sizeof(int))
    c.col_rem = <i64*> malloc(m * sizeof(i64))
    c.sel = <int*> malloc(k * sizeof(int))
    c.selx = <i64*> malloc(k * sizeof(i64))
    c.sely = <i64*> malloc(k * sizeof(i64))
    c.best_sel = <int*> malloc(k * sizeof(int))
    c.best_xc = <i64*> malloc((m - 1) * sizeof(i64))
    c.best_yc = <i64*> malloc((m - 1) * sizeof(i64))
    c.best_K = <int*> malloc(mm * sizeof(int))
    c.coords = &coords[0, 0]

    if (xstrip == NULL or ystrip == NULL or xsizes == NULL or ysizes == NULL
            or cdx == NULL or cdy == NULL or fill_pos == NULL
            or c.members == NULL or c.proj == NULL or c.cell_start == NULL
            or c.cell_len == NULL or c.K == NULL or c.col_rem == NULL
            or c.sel == NULL or c.selx == NULL or c.sely == NULL
            or c.best_sel == NULL or c.best_xc == NULL or c.best_yc == NULL
            or c.best_K == NULL):
        free(xstrip); free(ystrip); free(xsizes); free(ysizes)
        free(cdx); free(cdy); free(fill_pos)
        free(c.members); free(c.proj); free(c.cell_start); free(c.cell_len)
        free(c.K); free(c.col_rem); free(c.sel); free(c.selx); free(c.sely)
        free(c.best_sel); free(c.best_xc); free(c.best_yc); free(c.best_K)
        raise MemoryError()

    try:
        with nogil:
            for i in range(m):
                cdx[i] = 2 * i + 1 - m
                cdy[i] = 2 * i + 1 - m
            for t in range(mm):
                c.K[t] = 0
            for xi in range(row_lo, row_hi):
                c.cur_xc = &x_cuts[xi, 0]
                for p in range(n):
                    r = rank_x[p]
                    s = 0
                    while s < m - 1 and r >= c.cur_xc[s]:
                        s += 1
                    xstrip[p] = s
                for i in range(m):
                    xsizes[i] = 0
                for p in range(n):
                    xsizes[xstrip[p]] += 1
                for yi in range(n_yc):
                    c.cur_yc = &y_cuts[yi, 0]
                    for p in range(n):
                        r = rank_y[p]
                        s = 0
                        while s < m - 1 and r >= c.cur_yc[s]:
                            s += 1
                        ystrip[p] = s
                    for j in range(m):
                        ysizes[j] = 0
                    for p in range(n):
                        ysizes[ystrip[p]] += 1
                    pairs += 1
                    # bucket points into cells, projections per cell direction
                    for cell in range(mm):
                        c.cell_len[cell] = 0
                    for p in range(n):
                        c.cell_len[ystrip[p] * m + xstrip[p]] += 1
                    c.cell_start[0] = 0
                    for cell in range(mm):
                        c.cell_start[cell + 1] = c.cell_start[cell] + c.cell_len[cell]
                        fill_pos[cell] = 0
                    for p in range(n):
                        i = xstrip[p]
                        j = ystrip[p]
                        cell = j * m + i
                        t = c.cell_start[cell] + fill_pos[cell]
                        fill_pos[cell] += 1
                        c.members[t] = p
                        c.proj[t] = (cdx[i] * c.coords[2 * p]
                                     + cdy[j] * c.coords[2 * p + 1])
                    # insertion sort each cell by projection desc, id asc
                    for cell in range(mm):
                        start = c.cell_start[cell]
                        for t in range(start + 1, c.cell_start[cell + 1]):
                            keyv = c.proj[t]
                            key = c.members[t]
                            u = t - 1
                            while u >= start and (
                                c.proj[u] < keyv
                                or (c.proj[u] == keyv and c.members[u] > key)
                            ):
                                c.proj[u + 1] = c.proj[u]
                                c.members[u + 1] = c.members[u]
                                u -= 1
                            c.proj[u + 1] = keyv
                            c.members[u + 1] = key
                    for a in range(n_qx):
                        ok = 1
                        for i in range(m):
                            if xsizes[i] < qx[a, i]:
                                ok = 0
                                break
                        if not ok:
                            continue
                        for b in range(n_qy):
                            ok = 1
                            for j in range(m):
                                if ysizes[j] < qy[b, j]:
                                    ok = 0
                                    break
                            if not ok:
                                continue
                            for i in range(m):
                                c.col_rem[i] = qx[a, i]
                            c.qy_row = &qy[b, 0]
                            _fill(&c, 0, 0, c.qy_row[0])
        if not c.found:
            return False, 0, None, None, None, None, c.configs, pairs
        sel_out = np.empty(k, dtype=np.int64)
        for t in range(k):
            sel_out[t] = c.best_sel[t]
        xc_out = np.empty(m - 1, dtype=np.int64)
        yc_out = np.empty(m - 1, dtype=np.int64)
        for t in range(m - 1):
            xc_out[t] = c.best_xc[t]
            yc_out[t] = c.best_yc[t]
        k_out = np.empty((m, m), dtype=np.int64)
        for j in range(m):
            for i in range(m):
                k_out[j, i] = c.best_K[j * m + i]
        return True, int(c.best_w), sel_out, xc_out, yc_out, k_out, c.configs, pairs
    finally:
        free(xstrip); free(ystrip); free(xsizes); free(ysizes)
        free(cdx); free(cdy); free(fill_pos)
        free(c.members); free(c.proj); free(c.cell_start); free(c.cell_len)
        free(c.K); free(c.col_rem); free(c.sel); free(c.selx); free(c.sely)
        free(c.best_sel); free(c.best_xc); free(c.best_yc); free(c.best_K)
