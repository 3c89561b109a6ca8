"""Binary sensing matrices from polynomial graphs over the prime field Z_p.

Column ``P`` (a polynomial of degree <= r) has its one in block ``l`` at
within-block position ``P(l - 1) mod p + 1``, for ``l = 1..p``.  Two
distinct polynomials of degree <= r agree on at most r points, so the
overlap of any two columns is at most r.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numtheory import is_prime
from .core import BlockBinaryMatrix
from .errors import ParameterError, RangeError

__all__ = ["DevoreParams", "devore_matrix", "eval_poly"]


@dataclass(frozen=True)
class DevoreParams:
    p: int
    r: int = 1

    def __post_init__(self):
        if int(self.p) != self.p or not is_prime(int(self.p)):
            raise ParameterError(f"p must be prime, got {self.p!r}")
        if int(self.r) != self.r or not 0 <= self.r < self.p:
            raise ParameterError(f"r must satisfy 0 <= r < p={self.p}, got {self.r!r}")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "r", int(self.r))

    @property
    def shape(self) -> tuple[int, int]:
        return self.p * self.p, self.p ** (self.r + 1)

    def matrix(self) -> BlockBinaryMatrix:
        return devore_matrix(self.p, self.r)


def eval_poly(coeffs, x: int, p: int) -> int:
    """Evaluate ``sum(coeffs[i] * x**i) mod p`` by Horner's rule.

    ``coeffs`` is ordered from the constant term upwards.
    """
    if any(not 0 <= c < p for c in coeffs):
        raise RangeError(f"coefficients must lie in 0..{p - 1}")
    if not 0 <= x < p:
        raise RangeError(f"evaluation point must lie in 0..{p - 1}")
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def devore_matrix(p: int, r: int = 1) -> BlockBinaryMatrix:
    """The p^2 x p^(r+1) DeVore matrix as a block matrix with n = k = p.

    Columns run over coefficient vectors ``(a_r, ..., a_1, a_0)`` in
    lexicographic order, highest degree slowest.
    """
    params = DevoreParams(p, r)
    p, r = params.p, params.r
    # row c of `coeffs` is (a_r, ..., a_0) of the c-th polynomial
    digits = np.arange(p ** (r + 1), dtype=np.int64)[:, None] // p ** np.arange(r, -1, -1, dtype=np.int64)
    coeffs = digits % p
    x = np.arange(p, dtype=np.int64)
    values = np.zeros((coeffs.shape[0], p), dtype=np.int64)
    for col in coeffs.T:
        values = (values * x + col[:, None]) % p
    return BlockBinaryMatrix(p, p, values + 1, r)
