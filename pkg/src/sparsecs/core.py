"""Block-matrix data model and the exact matrix <-> support-tuple conversions.

A block binary matrix with ``k`` row blocks of size ``n`` has exactly one
``1`` per block in every column, so column ``j`` is fully described by the
k-tuple of within-block positions of its ones.  Tuples (1-based) are the
canonical representation; dense and sparse arrays are derived views.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DuplicateColumnError, MalformedMatrixError, ParameterError, RangeError

__all__ = [
    "BlockBinaryMatrix",
    "SupportTupleSet",
    "TernaryBlockMatrix",
    "matrix_to_tuples",
    "tuples_to_matrix",
    "truncate_blocks",
]


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.int64, copy=True)
    if arr.ndim == 1 and ndim == 2 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != ndim:
        raise MalformedMatrixError(f"{name} must be a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_positive(name: str, value) -> int:
    if int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _first_duplicate(tuples: np.ndarray, n: int) -> tuple[int, int] | None:
    """0-based indices of the first repeated tuple, or None if all distinct."""
    m, k = tuples.shape
    if m < 2:
        return None
    if k * np.log2(max(n, 2)) < 62:
        keys = ((tuples - 1) * (n ** np.arange(k, dtype=np.int64))).sum(axis=1)
        order = np.argsort(keys, kind="stable")
        same = np.flatnonzero(keys[order][1:] == keys[order][:-1])
    else:
        order = np.lexsort(tuples.T[::-1])
        srt = tuples[order]
        same = np.flatnonzero((srt[1:] == srt[:-1]).all(axis=1))
    if same.size == 0:
        return None
    a, b = sorted((int(order[same[0]]), int(order[same[0] + 1])))
    return a, b


@dataclass(frozen=True, eq=False)
class SupportTupleSet:
    """Ordered list of k-tuples over ``{1..n}``.

    Duplicates are allowed here; they are rejected when the set is turned
    into a matrix.
    """

    n: int
    k: int
    tuples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _check_positive("n", self.n))
        object.__setattr__(self, "k", _check_positive("k", self.k))
        arr = _frozen_array(self.tuples, 2, "tuples")
        if arr.size == 0:
            arr = np.zeros((0, self.k), dtype=np.int64)
            arr.setflags(write=False)
        if arr.shape[1] != self.k:
            raise MalformedMatrixError(f"every tuple needs exactly k={self.k} entries, got {arr.shape[1]}")
        if arr.size and (arr.min() < 1 or arr.max() > self.n):
            bad = np.argwhere((arr < 1) | (arr > self.n))[0]
            raise RangeError(
                f"tuple {bad[0] + 1} entry {bad[1] + 1} = {arr[bad[0], bad[1]]} outside 1..{self.n}"
            )
        object.__setattr__(self, "tuples", arr)

    def __len__(self) -> int:
        return self.tuples.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SupportTupleSet):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and np.array_equal(self.tuples, other.tuples)

    __hash__ = None

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.tuples]


@dataclass(frozen=True, eq=False)
class BlockBinaryMatrix:
    """Binary matrix of ``k`` row blocks of size ``n``, one 1 per block per column.

    Parameters
    ----------
    n : int
        Block size.
    k : int
        Number of row blocks.
    tuples : array_like, shape (M, k)
        1-based within-block positions of the ones, one row per column.
    r : int
        Declared bound on the support overlap of any two distinct columns.
        Carried as metadata; :meth:`verify` re-checks it by brute force.
    """

    n: int
    k: int
    tuples: np.ndarray
    r: int

    def __post_init__(self):
        s = SupportTupleSet(self.n, self.k, self.tuples)
        object.__setattr__(self, "n", s.n)
        object.__setattr__(self, "k", s.k)
        object.__setattr__(self, "tuples", s.tuples)
        if int(self.r) != self.r or self.r < 0:
            raise ParameterError(f"overlap bound r must be a non-negative integer, got {self.r!r}")
        object.__setattr__(self, "r", int(self.r))
        dup = _first_duplicate(s.tuples, s.n)
        if dup is not None:
            raise DuplicateColumnError(
                f"columns {dup[0] + 1} and {dup[1] + 1} have the same support tuple "
                f"{tuple(int(v) for v in s.tuples[dup[0]])}"
            )

    @property
    def n_rows(self) -> int:
        return self.n * self.k

    @property
    def n_cols(self) -> int:
        return self.tuples.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def column_weight(self) -> int:
        return self.k

    def __len__(self) -> int:
        return self.n_cols

    def __eq__(self, other):
        if not isinstance(other, BlockBinaryMatrix):
            return NotImplemented
        return (self.n, self.k, self.r) == (other.n, other.k, other.r) and np.array_equal(
            self.tuples, other.tuples
        )

    __hash__ = None

    def __repr__(self):
        return f"BlockBinaryMatrix(n={self.n}, k={self.k}, M={self.n_cols}, r={self.r})"

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.tuples]

    def support_rows(self) -> np.ndarray:
        """1-based dense row indices of the ones, shape (M, k), ascending per column."""
        return self.tuples + self.n * np.arange(self.k, dtype=np.int64)

    def to_dense(self, dtype=np.int8) -> np.ndarray:
        out = np.zeros(self.shape, dtype=dtype)
        cols = np.repeat(np.arange(self.n_cols), self.k)
        out[self.support_rows().ravel() - 1, cols] = 1
        return out

    def to_sparse(self) -> sp.csc_matrix:
        m = self.n_cols
        indptr = np.arange(0, m * self.k + 1, self.k)
        data = np.ones(m * self.k, dtype=np.int8)
        return sp.csc_matrix((data, self.support_rows().ravel() - 1, indptr), shape=self.shape)

    def with_bound(self, r: int) -> BlockBinaryMatrix:
        return BlockBinaryMatrix(self.n, self.k, self.tuples, r)

    def verify(self) -> int:
        """Brute-force the maximum pairwise overlap and check it against ``r``.

        Returns the measured overlap.  Raises VerificationError if it
        exceeds the declared bound.
        """
        from .analysis import max_overlap
        from .errors import VerificationError

        measured = max_overlap(self) if self.n_cols >= 2 else 0
        if measured > self.r:
            raise VerificationError(f"declared overlap bound r={self.r} but measured {measured}")
        return measured


@dataclass(frozen=True, eq=False)
class TernaryBlockMatrix:
    """Sparse matrix with entries in {-1, 0, +1} and uniform column weight.

    Parameters
    ----------
    n_rows : int
        Number of rows.
    rows : array_like, shape (M, w)
        1-based row indices of the nonzeros, strictly ascending per column.
    signs : array_like, shape (M, w)
        Value (+1 or -1) of each nonzero.
    n, k : int, optional
        Block size and block count when every column has exactly one
        nonzero per block (then ``w == k`` and ``n_rows == n * k``).
    r : int, optional
        Declared bound on ``|<col_i, col_j>|`` for distinct columns.
    parent : array_like of int, shape (M,), optional
        0-based index of the binary column each column was spawned from
        (Hadamard expansion).
    """

    n_rows: int
    rows: np.ndarray
    signs: np.ndarray
    n: int | None = None
    k: int | None = None
    r: int | None = None
    parent: np.ndarray | None = field(default=None)

    def __post_init__(self):
        n_rows = _check_positive("n_rows", self.n_rows)
        rows = _frozen_array(self.rows, 2, "rows")
        signs = np.array(self.signs, dtype=np.int8, copy=True)
        if signs.shape != rows.shape:
            raise MalformedMatrixError(f"signs shape {signs.shape} != rows shape {rows.shape}")
        if signs.size and not np.isin(signs, (-1, 1)).all():
            raise MalformedMatrixError("ternary entries must be -1 or +1 on the support")
        signs.setflags(write=False)
        if rows.size:
            if rows.min() < 1 or rows.max() > n_rows:
                raise RangeError(f"row indices must lie in 1..{n_rows}")
            if rows.shape[1] > 1 and not (np.diff(rows, axis=1) > 0).all():
                raise MalformedMatrixError("row indices must be strictly ascending within each column")
        if (self.n is None) != (self.k is None):
            raise ParameterError("n and k must be given together")
        if self.n is not None:
            n = _check_positive("n", self.n)
            k = _check_positive("k", self.k)
            if n * k != n_rows or rows.shape[1] != k:
                raise MalformedMatrixError(
                    f"block form needs n*k == n_rows and weight k; got n={n}, k={k}, "
                    f"n_rows={n_rows}, weight={rows.shape[1]}"
                )
            pos = rows - n * np.arange(k, dtype=np.int64)
            if pos.size and (pos.min() < 1 or pos.max() > n):
                raise MalformedMatrixError("block form needs exactly one nonzero per block")
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "k", k)
        if self.r is not None:
            object.__setattr__(self, "r", int(self.r))
        if self.parent is not None:
            parent = _frozen_array(self.parent, 1, "parent")
            if parent.shape[0] != rows.shape[0]:
                raise MalformedMatrixError("parent must have one entry per column")
            object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "n_rows", n_rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "signs", signs)

    @property
    def n_cols(self) -> int:
        return self.rows.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def column_weight(self) -> int:
        return self.rows.shape[1]

    @property
    def is_block_form(self) -> bool:
        return self.n is not None

    def __len__(self) -> int:
        return self.n_cols

    def __eq__(self, other):
        if not isinstance(other, TernaryBlockMatrix):
            return NotImplemented
        same_parent = (self.parent is None and other.parent is None) or (
            self.parent is not None
            and other.parent is not None
            and np.array_equal(self.parent, other.parent)
        )
        return (
            (self.n_rows, self.n, self.k, self.r) == (other.n_rows, other.n, other.k, other.r)
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.signs, other.signs)
            and same_parent
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"TernaryBlockMatrix(shape={self.shape}, weight={self.column_weight}, "
            f"n={self.n}, k={self.k}, r={self.r})"
        )

    def positions(self) -> np.ndarray:
        """Within-block positions, shape (M, k); block form only."""
        if not self.is_block_form:
            raise MalformedMatrixError("positions are defined only for block-form matrices")
        return self.rows - self.n * np.arange(self.k, dtype=np.int64)

    def to_dense(self, dtype=np.int8) -> np.ndarray:
        out = np.zeros(self.shape, dtype=dtype)
        cols = np.repeat(np.arange(self.n_cols), self.column_weight)
        out[self.rows.ravel() - 1, cols] = self.signs.ravel()
        return out

    def to_sparse(self) -> sp.csc_matrix:
        m, w = self.rows.shape
        indptr = np.arange(0, m * w + 1, w)
        return sp.csc_matrix((self.signs.ravel(), self.rows.ravel() - 1, indptr), shape=self.shape)


def _tuples_from_dense(dense: np.ndarray, n: int) -> np.ndarray:
    if dense.ndim != 2:
        raise MalformedMatrixError(f"expected a 2-d matrix, got shape {dense.shape}")
    rows, m = dense.shape
    if rows % n:
        raise MalformedMatrixError(f"row count {rows} is not a multiple of block size n={n}")
    if not np.isin(dense, (0, 1)).all():
        raise MalformedMatrixError("binary matrix entries must be 0 or 1")
    k = rows // n
    blocks = dense.reshape(k, n, m)
    counts = blocks.sum(axis=1)
    if (counts != 1).any():
        blk, col = np.argwhere(counts != 1)[0]
        raise MalformedMatrixError(
            f"column {col + 1} has {counts[blk, col]} ones in block {blk + 1}; exactly one is required"
        )
    return (blocks.argmax(axis=1) + 1).T


def matrix_to_tuples(matrix, n: int | None = None) -> SupportTupleSet:
    """Support tuples of a block binary matrix.

    ``matrix`` may be a :class:`BlockBinaryMatrix` or a dense 0/1 array;
    a dense array needs the block size ``n``.  Entry ``l`` of tuple ``i``
    is the 1-based position of the one inside block ``l`` of column ``i``,
    i.e. ``((supp - 1) mod n) + 1``.
    """
    if isinstance(matrix, BlockBinaryMatrix):
        return SupportTupleSet(matrix.n, matrix.k, matrix.tuples)
    if n is None:
        raise ParameterError("block size n is required for a dense matrix")
    n = _check_positive("n", n)
    dense = np.asarray(matrix)
    tuples = _tuples_from_dense(dense, n)
    return SupportTupleSet(n, dense.shape[0] // n, tuples)


def tuples_to_matrix(s: SupportTupleSet, r: int | None = None) -> BlockBinaryMatrix:
    """Block binary matrix whose column ``j`` has ones at rows ``(l-1)*n + a_l``.

    If ``r`` is omitted the overlap bound is measured by brute force.
    """
    if r is None:
        from .analysis import max_overlap

        probe = BlockBinaryMatrix(s.n, s.k, s.tuples, s.k)
        r = max_overlap(probe) if len(s) >= 2 else 0
    return BlockBinaryMatrix(s.n, s.k, s.tuples, r)


def truncate_blocks(m: BlockBinaryMatrix, k_new: int, deduplicate: bool = False) -> BlockBinaryMatrix:
    """Keep only the first ``k_new`` entries of every support tuple.

    Overlaps cannot grow on a sub-tuple, so the declared bound is kept
    (capped at ``k_new``).  Columns that collapse onto the same tuple raise
    DuplicateColumnError unless ``deduplicate`` is set, in which case only
    the first occurrence of each tuple is kept.
    """
    k_new = _check_positive("k_new", k_new)
    if k_new > m.k:
        raise RangeError(f"cannot keep {k_new} blocks of a matrix with {m.k}")
    if k_new == m.k:
        return m
    cut = m.tuples[:, :k_new]
    if deduplicate:
        _, first = np.unique(cut, axis=0, return_index=True)
        cut = cut[np.sort(first)]
    return BlockBinaryMatrix(m.n, k_new, cut, min(m.r, k_new))
