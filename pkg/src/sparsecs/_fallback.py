"""Pure numpy implementation of the pairwise scans in ``_kernels.pyx``.

Selected at import when the compiled extension is unavailable.  Works on
column chunks so memory stays at ``O(chunk * M * w)``.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

_CHUNK_ELEMENTS = 1 << 22


def _aligned_block(codes, signs, lo, hi):
    # |<col_i, col_j>| for i in [lo, hi), every j; aligned slots only
    eq = codes[lo:hi, None, :] == codes[None, :, :]
    if signs is None:
        return eq.sum(axis=2)
    prod = signs[lo:hi, None, :].astype(np.int64) * signs[None, :, :]
    return np.abs((eq * prod).sum(axis=2))


def _merge_matrix(codes, signs):
    m, w = codes.shape
    data = np.ones(m * w, dtype=np.int64) if signs is None else signs.ravel().astype(np.int64)
    cols = np.repeat(np.arange(m), w)
    n_rows = int(codes.max()) + 1 if codes.size else 1
    return sp.csc_matrix((data, (codes.ravel(), cols)), shape=(n_rows, m))


def max_abs_inner(codes, signs=None, aligned=True, groups=None):
    """Return ``(value, i, j)`` for the pair maximising ``|<col_i, col_j>|``."""
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    m, w = codes.shape
    best, bi, bj = -1, -1, -1
    if m < 2:
        return best, bi, bj
    chunk = max(1, _CHUNK_ELEMENTS // max(1, m * w))
    mat = None if aligned else _merge_matrix(codes, signs)
    col_index = np.arange(m)
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        if aligned:
            block = _aligned_block(codes, signs, lo, hi)
        else:
            block = np.abs((mat[:, lo:hi].T @ mat).toarray())
        # keep only j > i
        mask = col_index[None, :] > col_index[lo:hi, None]
        if groups is not None:
            mask &= groups[lo:hi, None] != groups[None, :]
        block = np.where(mask, block, -1)
        flat = int(np.argmax(block))
        r, c = divmod(flat, m)
        v = int(block[r, c])
        if v > best:
            best, bi, bj = v, lo + r, c
            if best == w:
                break
    return best, bi, bj
