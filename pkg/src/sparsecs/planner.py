"""Binary sensing matrices of a prescribed row size.

Any ``m`` with at least three prime factors (counted with multiplicity)
is written as ``m = q * p_1 * ... * p_t`` with ``q`` the smallest prime
factor.  Composing the DeVore matrices for ``p_1, ..., p_t`` while keeping
``k = q`` blocks gives ``q * p_1 * ... * p_t = m`` rows.  Row sizes with
one or two prime factors (``p``, ``p^2``, ``pq``) are not covered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._numtheory import factorize
from .compose import compose_chain
from .core import BlockBinaryMatrix
from .devore import DevoreParams, devore_matrix
from .errors import NotCoveredError, ParameterError, VerificationError

__all__ = ["CompositionPlan", "execute_plan", "factorize", "plan_row_size"]

EXCLUSION = "different from p, p², pq"


@dataclass(frozen=True)
class CompositionPlan:
    target_rows: int
    k: int
    base_params: tuple[DevoreParams, ...]

    def __post_init__(self):
        object.__setattr__(self, "base_params", tuple(self.base_params))
        if len(self.base_params) < 2:
            raise ParameterError("a plan needs at least two base matrices")
        if self.k > min(b.p for b in self.base_params):
            raise ParameterError(f"k={self.k} exceeds the smallest base block count")
        if self.max_r >= self.k:
            raise ParameterError(f"base degree r={self.max_r} must be below k={self.k}")
        if self.k * math.prod(b.p for b in self.base_params) != self.target_rows:
            raise ParameterError("k times the product of base primes must equal the target rows")

    @property
    def max_r(self) -> int:
        return max(b.r for b in self.base_params)

    @property
    def predicted_shape(self) -> tuple[int, int]:
        return self.target_rows, math.prod(b.p ** (b.r + 1) for b in self.base_params)

    @property
    def predicted_coherence(self) -> Fraction:
        return Fraction(self.max_r, self.k)

    def describe(self) -> str:
        factors = " x ".join(str(f) for f in sorted([self.k, *(b.p for b in self.base_params)]))
        lines = [f"rows m = {self.target_rows} = {factors}", f"blocks kept k = {self.k}"]
        for i, b in enumerate(self.base_params, 1):
            rows, cols = b.shape
            lines.append(f"base {i}: devore p={b.p} r={b.r} ({rows} x {cols})")
        rows, cols = self.predicted_shape
        lines.append(f"result: {rows} x {cols}, coherence <= {self.predicted_coherence}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "target_rows": self.target_rows,
            "k": self.k,
            "bases": [{"p": b.p, "r": b.r} for b in self.base_params],
            "predicted_shape": list(self.predicted_shape),
            "predicted_coherence": str(self.predicted_coherence),
        }


def plan_row_size(m: int, r: int = 1) -> CompositionPlan:
    """Plan a composition of DeVore matrices with exactly ``m`` rows.

    ``r`` is the polynomial degree of every base matrix.
    """
    if int(m) != m or m < 1:
        raise ParameterError(f"row size must be a positive integer, got {m!r}")
    m = int(m)
    factors = factorize(m) if m >= 2 else []
    if len(factors) <= 2:
        if not factors:
            kind = "1"
        elif len(factors) == 1:
            kind = "a prime p"
        elif factors[0] == factors[1]:
            kind = "p² (devore_matrix(p, r) already provides p² rows directly)"
        else:
            kind = "pq for distinct primes p, q"
        raise NotCoveredError(f"row size {m} is {kind}; covered row sizes are those {EXCLUSION}")
    k, bases = factors[0], factors[1:]
    if not 1 <= r < k:
        raise ParameterError(f"base degree r={r} must satisfy 1 <= r < k={k}")
    return CompositionPlan(m, k, tuple(DevoreParams(p, r) for p in bases))


def execute_plan(plan: CompositionPlan) -> BlockBinaryMatrix:
    """Build the bases and fold :func:`compose` over them with the plan's ``k``."""
    bases = [devore_matrix(b.p, b.r) for b in plan.base_params]
    out = compose_chain(bases, plan.k)
    if out.shape != plan.predicted_shape:
        raise VerificationError(f"plan predicted {plan.predicted_shape}, built {out.shape}")
    if out.r != plan.max_r or Fraction(out.r, out.k) != plan.predicted_coherence:
        raise VerificationError(f"declared bound {out.r}/{out.k} != plan bound {plan.predicted_coherence}")
    return out
