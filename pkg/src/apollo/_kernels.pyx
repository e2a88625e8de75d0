# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for orbit expansion and pairwise product scans.

All arithmetic is on int64; callers keep entries below ``ENTRY_LIMIT`` so no
intermediate product can overflow.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

ENTRY_LIMIT = 1 << 26


cdef inline int64_t _dot(const int64_t[::1] u, const int64_t[::1] v, Py_ssize_t rho) noexcept nogil:
    cdef int64_t s = 0, su = 0, sv = 0
    cdef Py_ssize_t i
    for i in range(rho):
        s += u[i] * v[i]
        su += u[i]
        sv += v[i]
    return 2 * s - su * sv


def expand(const int64_t[:, ::1] frontier, const int64_t[:, :, ::1] gens,
           const int64_t[::1] E, const int64_t[::1] B, int64_t H):
    """Apply every generator to every row; keep images with ``-B.y <= H``.

    Returns ``(images, parent_row, gen_index, heights)``; rows are ordered by
    (parent row, generator) so the output is deterministic.
    """
    cdef Py_ssize_t n = frontier.shape[0], g = gens.shape[0], rho = frontier.shape[1]
    cdef Py_ssize_t i, a, r, c, kept = 0
    cdef int64_t acc, h, mx = 0, sb = 0, s, su
    out_np = np.empty((n * g, rho), dtype=np.int64)
    par_np = np.empty(n * g, dtype=np.int64)
    gen_np = np.empty(n * g, dtype=np.int64)
    hts_np = np.empty(n * g, dtype=np.int64)
    cdef int64_t[:, ::1] out = out_np
    cdef int64_t[:] par = par_np, gen = gen_np, hts = hts_np
    with nogil:
        for r in range(rho):
            sb += B[r]
        for i in range(n):
            for a in range(g):
                s = 0
                su = 0
                for r in range(rho):
                    acc = 0
                    for c in range(rho):
                        acc += gens[a, r, c] * frontier[i, c]
                    out[kept, r] = acc
                    s += acc * B[r]
                    su += acc
                    if acc > mx:
                        mx = acc
                    elif -acc > mx:
                        mx = -acc
                # h = -B.y with the closed form 2 sum(B y) - sum(B) sum(y)
                h = su * sb - 2 * s
                if h <= H:
                    par[kept] = i
                    gen[kept] = a
                    hts[kept] = h
                    kept += 1
    if mx >= ENTRY_LIMIT:
        raise OverflowError("orbit vectors too large for int64 kernels")
    return out_np[:kept], par_np[:kept], gen_np[:kept], hts_np[:kept]


def products_with(const int64_t[:, ::1] V, const int64_t[::1] w):
    cdef Py_ssize_t n = V.shape[0], rho = V.shape[1], i
    res_np = np.empty(n, dtype=np.int64)
    cdef int64_t[:] res = res_np
    with nogil:
        for i in range(n):
            res[i] = _dot(V[i], w, rho)
    return res_np


def pair_scan(const int64_t[:, ::1] V):
    """Count tangent pairs (product -1) and pairs with product > -1.

    Returns ``(n_tangent, n_bad, first_i, first_j, first_value)``; first_* are
    -1 and 0 when no pair has product above -1.
    """
    cdef Py_ssize_t n = V.shape[0], rho = V.shape[1], i, j, k
    cdef int64_t tangent = 0, bad = 0, fi = -1, fj = -1, fv = 0, s, p
    sums_np = np.asarray(V).sum(axis=1).astype(np.int64)
    cdef int64_t[:] sums = sums_np
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                s = 0
                for k in range(rho):
                    s += V[i, k] * V[j, k]
                p = 2 * s - sums[i] * sums[j]
                if p == -1:
                    tangent += 1
                elif p > -1:
                    if bad == 0:
                        fi = i
                        fj = j
                        fv = p
                    bad += 1
    return tangent, bad, fi, fj, fv
