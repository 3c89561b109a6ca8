"""Ternary sensing matrices derived from block binary ones.

Two constructions:

* :func:`sign_flip` negates the one in block ``l`` whenever ``l`` exceeds
  its within-block position.  The sign depends only on the (block,
  position) cell, so every pairwise inner product keeps its magnitude.
* :func:`hadamard_expand` replaces each column by ``k + r'`` columns that
  carry the columns of a Sylvester Hadamard matrix (restricted to its
  first ``k`` rows) on the original support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numtheory import is_power_of_two
from .core import BlockBinaryMatrix, TernaryBlockMatrix
from .errors import MalformedMatrixError, ParameterError

__all__ = [
    "HadamardMatrix",
    "hadamard_expand",
    "hadamard_sylvester",
    "row_gram_defect",
    "sign_flip",
]


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    order: int
    entries: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.entries)
        if h.shape != (self.order, self.order):
            raise MalformedMatrixError(f"entries must be {self.order}x{self.order}")
        gram = h.astype(np.int64) @ h.T.astype(np.int64)
        if not np.array_equal(gram, self.order * np.eye(self.order, dtype=np.int64)):
            raise MalformedMatrixError("rows are not pairwise orthogonal")
        h = h.astype(np.int8)
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)


def hadamard_sylvester(order: int) -> HadamardMatrix:
    """Sylvester doubling ``H_2m = [[H_m, H_m], [H_m, -H_m]]`` from ``H_1 = [1]``."""
    if int(order) != order or not is_power_of_two(int(order)):
        raise ParameterError(f"Sylvester Hadamard order must be a power of two, got {order!r}")
    h = np.ones((1, 1), dtype=np.int8)
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return HadamardMatrix(int(order), h)


def sign_flip(phi: BlockBinaryMatrix) -> TernaryBlockMatrix:
    """Negate the one in block ``l`` of a column when ``l > position``.

    >>> from sparsecs.core import BlockBinaryMatrix
    >>> sign_flip(BlockBinaryMatrix(3, 3, [[2, 3, 1]], 0)).to_dense()[:, 0].tolist()
    [0, 1, 0, 0, 0, 1, -1, 0, 0]
    """
    if not isinstance(phi, BlockBinaryMatrix):
        raise MalformedMatrixError(f"sign_flip needs a BlockBinaryMatrix, got {type(phi).__name__}")
    block = np.arange(1, phi.k + 1, dtype=np.int64)
    signs = np.where(block > phi.tuples, -1, 1).astype(np.int8)
    return TernaryBlockMatrix(phi.n_rows, phi.support_rows(), signs, n=phi.n, k=phi.k, r=phi.r)


def _binary_support(psi):
    """(n_rows, rows (M, k), r, block) for a block matrix or a dense 0/1 array."""
    if isinstance(psi, BlockBinaryMatrix):
        return psi.n_rows, psi.support_rows(), psi.r, (psi.n, psi.k)
    dense = np.asarray(psi)
    if dense.ndim != 2 or not np.isin(dense, (0, 1)).all():
        raise MalformedMatrixError("expected a binary matrix")
    weights = dense.sum(axis=0)
    if weights.size == 0 or (weights != weights[0]).any() or weights[0] == 0:
        raise MalformedMatrixError("hadamard_expand needs a uniform nonzero column weight")
    k = int(weights[0])
    rows = np.sort(np.argwhere(dense.T)[:, 1].reshape(-1, k), axis=1) + 1
    if dense.shape[1] >= 2:
        gram = dense.T.astype(np.int64) @ dense.astype(np.int64)
        np.fill_diagonal(gram, 0)
        r = int(gram.max())
    else:
        r = 0
    return dense.shape[0], rows, r, None


def admissible_orders(k: int, r: int) -> list[int]:
    """Sylvester orders in ``[k, k + r]``."""
    return [k + rp for rp in range(r + 1) if is_power_of_two(k + rp)]


def hadamard_expand(psi, r_prime: int | None = None) -> TernaryBlockMatrix:
    """Replace every column by ``k + r_prime`` signed copies.

    Parameters
    ----------
    psi : BlockBinaryMatrix or ndarray
        Binary matrix with uniform column weight ``k`` and overlap bound ``r``.
    r_prime : int, optional
        Extra Hadamard order, ``0 <= r_prime <= r``; defaults to the
        smallest value making ``k + r_prime`` a power of two.

    Returns
    -------
    TernaryBlockMatrix
        ``m x M(k + r_prime)``; spawned column ``t`` of parent ``j`` has
        ``H[s, t]`` at the ``s``-th smallest support row of ``psi[:, j]``.
    """
    n_rows, rows, r, block = _binary_support(psi)
    m, k = rows.shape
    orders = admissible_orders(k, r)
    if r_prime is None:
        if not orders:
            raise ParameterError(
                f"no power-of-two Hadamard order in [k, k + r] = [{k}, {k + r}]"
            )
        r_prime = orders[0] - k
    if int(r_prime) != r_prime or not 0 <= r_prime <= r:
        raise ParameterError(f"r_prime must satisfy 0 <= r_prime <= r={r}, got {r_prime!r}")
    order = k + int(r_prime)
    if not is_power_of_two(order):
        raise ParameterError(
            f"k + r_prime = {order} is not a Sylvester order; admissible orders in "
            f"[{k}, {k + r}]: {orders or 'none'}"
        )
    h = hadamard_sylvester(order).entries[:k, :]
    out_rows = np.repeat(rows, order, axis=0)
    # column j*order + t gets H[:k, t]
    out_signs = np.tile(h.T, (m, 1))
    parent = np.repeat(np.arange(m, dtype=np.int64), order)
    n, kb = block if block is not None else (None, None)
    return TernaryBlockMatrix(n_rows, out_rows, out_signs, n=n, k=kb, r=r, parent=parent)


def row_gram_defect(phi: TernaryBlockMatrix) -> int:
    """Largest ``|<row_a, row_b>|`` over distinct rows; 0 means orthogonal rows.

    A diagnostic only: row orthogonality is not guaranteed for every input.
    """
    a = phi.to_sparse().astype(np.int64)
    gram = (a @ a.T).toarray()
    np.fill_diagonal(gram, 0)
    return int(np.abs(gram).max()) if gram.size else 0
