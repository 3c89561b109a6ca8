"""Backend selection for the pairwise scan kernels.

The compiled Cython extension is used when it imports; otherwise the numpy
fallback.  Set ``SPARSECS_BACKEND=numpy`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"numpy": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

_requested = os.environ.get("SPARSECS_BACKEND", "").strip().lower()
if _requested and _requested not in BACKENDS:
    raise ImportError(
        f"SPARSECS_BACKEND={_requested!r} unavailable; choose from {sorted(BACKENDS)}"
    )
BACKEND = _requested or ("cython" if _compiled is not None else "numpy")


def max_abs_inner(codes, signs=None, aligned=True, groups=None, backend=None):
    """Largest ``|<col_i, col_j>|`` over distinct column pairs.

    Parameters
    ----------
    codes : ndarray of int, shape (M, w)
        Per-column slot codes (aligned mode) or ascending row indices
        (merge mode).
    signs : ndarray of int8, shape (M, w), optional
        Entry signs; all ``+1`` when omitted.
    aligned : bool
        Compare slot ``l`` of one column only with slot ``l`` of the other.
    groups : ndarray of int, shape (M,), optional
        Pairs with equal labels are skipped.
    backend : {"cython", "numpy"}, optional
        Defaults to the backend chosen at import.

    Returns
    -------
    value, i, j : int
        The maximum and the first 0-based pair ``i < j`` attaining it;
        ``(-1, -1, -1)`` if no pair was scanned.
    """
    impl = BACKENDS[backend or BACKEND]
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    if signs is not None:
        signs = np.ascontiguousarray(signs, dtype=np.int8)
    if groups is not None:
        groups = np.ascontiguousarray(groups, dtype=np.int64)
    return impl.max_abs_inner(codes, signs, aligned, groups)
