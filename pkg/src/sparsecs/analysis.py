"""Exact verification metrics for constructed sensing matrices.

All metrics are computed in integer / :class:`fractions.Fraction`
arithmetic.  Columns of the matrices built here all have the same weight
``w`` and entries in {-1, 0, 1}, so every column has norm ``sqrt(w)`` and
the mutual coherence is ``max |<col_i, col_j>| / w``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .compose import ComposeParams
from .core import BlockBinaryMatrix, TernaryBlockMatrix
from .errors import ParameterError, UndefinedMetricError

__all__ = [
    "AnalysisReport",
    "KroneckerComparison",
    "analyze",
    "coherence",
    "density",
    "hadamard_inner_bounds",
    "kronecker_shape_compare",
    "max_column_bound",
    "max_overlap",
    "max_overlap_pair",
    "rip_constant",
    "rip_order_bound",
    "rip_regime",
]


def _shape(m) -> tuple[int, int]:
    return tuple(int(v) for v in (m.shape if hasattr(m, "shape") else np.shape(m)))


def _dense_gram(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        raise ParameterError(f"expected a 2-d matrix, got shape {a.shape}")
    return a.T @ a


def max_overlap_pair(m, backend: str | None = None) -> tuple[int, int, int]:
    """``(value, i, j)``: the largest ``|<col_i, col_j>|`` and a 1-based pair attaining it.

    For binary matrices the inner product is the support intersection size.
    """
    n_cols = _shape(m)[1]
    if n_cols < 2:
        raise UndefinedMetricError("overlap needs at least two columns")
    if isinstance(m, BlockBinaryMatrix):
        v, i, j = kernels.max_abs_inner(m.tuples, None, True, backend=backend)
    elif isinstance(m, TernaryBlockMatrix):
        v, i, j = kernels.max_abs_inner(m.rows, m.signs, m.is_block_form, backend=backend)
    else:
        gram = np.abs(_dense_gram(m))
        gram[np.tril_indices(n_cols)] = -1
        i, j = np.unravel_index(int(np.argmax(gram)), gram.shape)
        v = gram[i, j]
    return int(v), int(i) + 1, int(j) + 1


def max_overlap(m, backend: str | None = None) -> int:
    """Exact maximum of ``|<col_i, col_j>|`` over all distinct column pairs."""
    return max_overlap_pair(m, backend)[0]


def _weights(m) -> np.ndarray:
    if isinstance(m, (BlockBinaryMatrix, TernaryBlockMatrix)):
        return np.full(m.n_cols, m.column_weight, dtype=np.int64)
    return np.diag(_dense_gram(m))


def density(m) -> Fraction:
    """Nonzero entries over total entries, exactly."""
    rows, cols = _shape(m)
    nnz = int(_weights(m).sum()) if not _is_dense(m) else int(np.count_nonzero(np.asarray(m)))
    return Fraction(nnz, rows * cols)


def _is_dense(m) -> bool:
    return not isinstance(m, (BlockBinaryMatrix, TernaryBlockMatrix))


def coherence(m, backend: str | None = None):
    """Mutual coherence ``max |<c_i, c_j>| / (||c_i|| ||c_j||)``.

    Returns a Fraction.  For a dense matrix with non-uniform column norms
    the exact squared maximum is found first; its square root is returned
    as a Fraction when rational and as a float otherwise.
    """
    w = _weights(m)
    if (w == 0).any():
        raise UndefinedMetricError("coherence is undefined with a zero column")
    if (w == w[0]).all():
        return Fraction(max_overlap(m, backend), int(w[0]))
    gram = _dense_gram(m)
    n_cols = gram.shape[0]
    if n_cols < 2:
        raise UndefinedMetricError("coherence needs at least two columns")
    best = Fraction(0)
    for i in range(n_cols):
        for j in range(i + 1, n_cols):
            best = max(best, Fraction(int(gram[i, j]) ** 2, int(w[i] * w[j])))
    num, den = math.isqrt(best.numerator), math.isqrt(best.denominator)
    if num * num == best.numerator and den * den == best.denominator:
        return Fraction(num, den)
    return math.sqrt(best)


def rip_constant(m, order: int, *, mu=None) -> Fraction:
    """Coherence-based RIP constant ``(order - 1) * mu``."""
    if int(order) != order or order < 1:
        raise ParameterError(f"RIP order must be a positive integer, got {order!r}")
    if mu is None:
        mu = coherence(m)
    return (int(order) - 1) * mu


def rip_regime(m, order: int, *, mu=None) -> bool:
    """True when ``order < 1/mu + 1``, i.e. the RIP constant is below 1."""
    return rip_constant(m, order, mu=mu) < 1


def rip_order_bound(mu, n_cols: int) -> int:
    """Largest ``s <= n_cols`` with ``(s - 1) * mu < 1``."""
    if mu == 0:
        return n_cols
    return max(1, min(n_cols, math.ceil(1 / Fraction(mu))))


def max_column_bound(rows: int, weight: int, overlap: int) -> int:
    """``floor(C(rows, overlap+1) / C(weight, overlap+1))``.

    Upper bound on the column count of a binary matrix with ``rows`` rows,
    column weight ``weight`` and pairwise overlap at most ``overlap``.
    """
    for name, v in (("rows", rows), ("weight", weight), ("overlap", overlap)):
        if int(v) != v or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v!r}")
    if not overlap + 1 <= weight <= rows:
        raise ParameterError(f"need overlap + 1 <= weight <= rows, got {overlap}, {weight}, {rows}")
    return math.comb(rows, overlap + 1) // math.comb(weight, overlap + 1)


@dataclass(frozen=True)
class KroneckerComparison:
    kronecker_shape: tuple[int, int]
    composed_shape: tuple[int, int]

    @property
    def kronecker_aspect(self) -> Fraction:
        return Fraction(self.kronecker_shape[1], self.kronecker_shape[0])

    @property
    def composed_aspect(self) -> Fraction:
        return Fraction(self.composed_shape[1], self.composed_shape[0])


def kronecker_shape_compare(a: BlockBinaryMatrix, b: BlockBinaryMatrix, k: int) -> KroneckerComparison:
    """Shapes of ``a (x) b`` and of ``compose(a, b, k)``, without building either."""
    ComposeParams(k).check(a, b)
    cols = a.n_cols * b.n_cols
    kron = (a.n_rows * b.n_rows, cols)
    composed = (a.n * b.n * k, cols)
    if k < a.k * b.k and not composed[0] < kron[0]:
        raise AssertionError(f"composed rows {composed[0]} not below Kronecker rows {kron[0]}")
    return KroneckerComparison(kron, composed)


def hadamard_inner_bounds(phi: TernaryBlockMatrix, backend: str | None = None) -> tuple[int, int]:
    """``(same_parent_max, cross_parent_max)`` of ``|<col_i, col_j>|`` for an expanded matrix."""
    if phi.parent is None:
        raise ParameterError("matrix carries no parent labels")
    a = phi.to_sparse().astype(np.int64).tocsc()
    same = 0
    bounds = np.flatnonzero(np.diff(phi.parent)) + 1
    for lo, hi in zip(np.r_[0, bounds], np.r_[bounds, phi.n_cols]):
        if hi - lo < 2:
            continue
        sub = a[:, lo:hi]
        g = np.abs((sub.T @ sub).toarray())
        np.fill_diagonal(g, 0)
        same = max(same, int(g.max()))
    if np.unique(phi.parent).size < 2:
        cross = 0
    else:
        cross = kernels.max_abs_inner(
            phi.rows, phi.signs, phi.is_block_form, groups=phi.parent, backend=backend
        )[0]
    return same, int(cross)


@dataclass(frozen=True)
class AnalysisReport:
    rows: int
    cols: int
    k: int
    density: Fraction
    max_overlap: int
    coherence: Fraction
    rip_order_bound: int
    aspect_ratio: Fraction

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("density", "coherence", "aspect_ratio"):
            d[key] = str(d[key])
        return d


def analyze(m, backend: str | None = None) -> AnalysisReport:
    """Full report for a uniform-weight matrix."""
    rows, cols = _shape(m)
    w = _weights(m)
    if (w != w[0]).any():
        raise UndefinedMetricError("analysis report needs a uniform column weight")
    overlap = max_overlap(m, backend)
    mu = Fraction(overlap, int(w[0]))
    return AnalysisReport(
        rows=rows,
        cols=cols,
        k=int(w[0]),
        density=density(m),
        max_overlap=overlap,
        coherence=mu,
        rip_order_bound=rip_order_bound(mu, cols),
        aspect_ratio=Fraction(cols, rows),
    )
