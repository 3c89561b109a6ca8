# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pairwise scans over sparse uniform-weight columns.

Columns are given as an ``(M, w)`` array of codes plus an optional
``(M, w)`` array of signs.  In *aligned* mode two columns meet at slot
``l`` iff their codes at slot ``l`` are equal (block matrices: the code is
the within-block position).  In *merge* mode each row of ``codes`` is an
ascending list of row indices and the intersection is found by a merge.
"""

import numpy as np

from libc.stdint cimport int64_t, int8_t


cdef inline int64_t _aligned(const int64_t[:, ::1] c, const int8_t[:, ::1] s,
                             bint signed, Py_ssize_t i, Py_ssize_t j,
                             Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t l
    cdef int64_t acc = 0
    if signed:
        for l in range(w):
            if c[i, l] == c[j, l]:
                acc += s[i, l] * s[j, l]
    else:
        for l in range(w):
            if c[i, l] == c[j, l]:
                acc += 1
    return acc if acc >= 0 else -acc


cdef inline int64_t _merge(const int64_t[:, ::1] c, const int8_t[:, ::1] s,
                           bint signed, Py_ssize_t i, Py_ssize_t j,
                           Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t a = 0, b = 0
    cdef int64_t acc = 0
    while a < w and b < w:
        if c[i, a] == c[j, b]:
            if signed:
                acc += s[i, a] * s[j, b]
            else:
                acc += 1
            a += 1
            b += 1
        elif c[i, a] < c[j, b]:
            a += 1
        else:
            b += 1
    return acc if acc >= 0 else -acc


def max_abs_inner(codes, signs=None, bint aligned=True, groups=None):
    """Return ``(value, i, j)`` for the pair maximising ``|<col_i, col_j>|``.

    Pairs with equal ``groups`` labels are skipped when ``groups`` is given.
    ``i < j`` are 0-based; ``(-1, -1, -1)`` when no pair is scanned.
    """
    cdef const int64_t[:, ::1] c = codes
    cdef Py_ssize_t m = c.shape[0]
    cdef Py_ssize_t w = c.shape[1]
    cdef bint signed = signs is not None
    cdef bint grouped = groups is not None
    cdef const int8_t[:, ::1] s = signs if signed else np.zeros((1, 1), np.int8)
    cdef const int64_t[::1] g = groups if grouped else np.zeros(1, np.int64)

    cdef int64_t best = -1, v
    cdef Py_ssize_t bi = -1, bj = -1, i, j
    with nogil:
        for i in range(m):
            for j in range(i + 1, m):
                if grouped and g[i] == g[j]:
                    continue
                if aligned:
                    v = _aligned(c, s, signed, i, j, w)
                else:
                    v = _merge(c, s, signed, i, j, w)
                if v > best:
                    best = v
                    bi = i
                    bj = j
                    if best == w:
                        break
            if best == w:
                break
    return int(best), int(bi), int(bj)
