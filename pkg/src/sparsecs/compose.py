"""Fusing two block binary matrices into one of lower density.

Given ``psi`` (block size n, M columns) and ``psi_prime`` (block size n',
M' columns), both cut to their first k blocks, the pair of columns
``(i, j)`` becomes the k-tuple

    a_l = psi_prime[j, l] + n' * (psi[i, l] - 1),   l = 1..k

over ``{1..n n'}``.  The result is an ``n n' k x M M'`` block matrix with
density ``1/(n n')`` whose column overlaps never exceed ``max(r, r')``:
``a_l`` determines both parent entries because ``|psi_prime diff| < n'``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import BlockBinaryMatrix, truncate_blocks
from .errors import MalformedMatrixError, ParameterError

__all__ = ["ComposeParams", "compose", "compose_chain"]


@dataclass(frozen=True)
class ComposeParams:
    """Number of leading blocks kept from each input."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    def check(self, *matrices: BlockBinaryMatrix) -> None:
        for m in matrices:
            if not isinstance(m, BlockBinaryMatrix):
                raise MalformedMatrixError(f"expected a BlockBinaryMatrix, got {type(m).__name__}")
        min_blocks = min(m.k for m in matrices)
        if self.k > min_blocks:
            raise ParameterError(f"k={self.k} exceeds the smallest input block count {min_blocks}")
        max_r = max(m.r for m in matrices)
        if max_r > self.k:
            raise ParameterError(f"overlap bound max(r)={max_r} exceeds k={self.k}")


def compose(psi: BlockBinaryMatrix, psi_prime: BlockBinaryMatrix, k) -> BlockBinaryMatrix:
    """Compose two block binary matrices, keeping ``k`` blocks.

    Output column ``j * M + i`` (0-based) comes from column ``i`` of
    ``psi`` and column ``j`` of ``psi_prime``.  The declared overlap bound
    of the result is ``max(psi.r, psi_prime.r)``.

    Warns when ``k`` exceeds the block size of ``psi``; nothing in the
    construction depends on it.
    """
    params = k if isinstance(k, ComposeParams) else ComposeParams(k)
    params.check(psi, psi_prime)
    k = params.k
    if k > psi.n:
        warnings.warn(f"k={k} exceeds the block size n={psi.n} of the first input", stacklevel=2)
    a = truncate_blocks(psi, k).tuples
    b = truncate_blocks(psi_prime, k).tuples
    n_b = psi_prime.n
    out = b[:, None, :] + n_b * (a[None, :, :] - 1)
    return BlockBinaryMatrix(psi.n * n_b, k, out.reshape(-1, k), max(psi.r, psi_prime.r))


def compose_chain(matrices, k) -> BlockBinaryMatrix:
    """Left fold of :func:`compose` over ``matrices`` with the same ``k``."""
    matrices = list(matrices)
    if len(matrices) < 2:
        raise ParameterError(f"compose_chain needs at least two matrices, got {len(matrices)}")
    params = k if isinstance(k, ComposeParams) else ComposeParams(k)
    params.check(*matrices)
    return reduce(lambda acc, nxt: compose(acc, nxt, params), matrices)
