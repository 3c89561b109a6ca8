"""Orthogonal Matching Pursuit and a seeded recovery harness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BlockBinaryMatrix, TernaryBlockMatrix
from .errors import DegenerateSystemError, ParameterError

__all__ = ["OmpResult", "RecoveryStats", "omp_recover", "recovery_trials"]

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class OmpResult:
    support: tuple[int, ...]
    coefficients: np.ndarray
    residual_norm: float


def _as_float_matrix(matrix) -> np.ndarray:
    if isinstance(matrix, (BlockBinaryMatrix, TernaryBlockMatrix)):
        return matrix.to_dense(dtype=np.float64)
    if hasattr(matrix, "toarray"):
        return np.asarray(matrix.toarray(), dtype=np.float64)
    return np.asarray(matrix, dtype=np.float64)


def omp_recover(matrix, y, sparsity: int, tol: float = RESIDUAL_TOL) -> OmpResult:
    """Greedy sparse solve of ``matrix @ x = y``.

    Each iteration picks the unit-normalized column most correlated with
    the residual, then refits ``y`` by least squares on the active set.
    Stops after ``sparsity`` iterations or once the residual 2-norm drops
    below ``tol``.

    Returns
    -------
    OmpResult
        ``support`` holds ascending 0-based column indices; ``coefficients``
        is the full-length estimate of ``x``.
    """
    a = _as_float_matrix(matrix)
    y = np.asarray(y, dtype=np.float64)
    n_rows, n_cols = a.shape
    if y.shape != (n_rows,):
        raise ParameterError(f"measurement has shape {y.shape}, expected ({n_rows},)")
    if int(sparsity) != sparsity or not 1 <= sparsity <= n_cols:
        raise ParameterError(f"sparsity must lie in 1..{n_cols}, got {sparsity!r}")
    norms = np.linalg.norm(a, axis=0)
    if (norms == 0).any():
        raise DegenerateSystemError("matrix has a zero column")
    unit = a / norms

    active: list[int] = []
    coef = np.zeros(0)
    residual = y.copy()
    for _ in range(int(sparsity)):
        if np.linalg.norm(residual) < tol:
            break
        corr = np.abs(unit.T @ residual)
        corr[active] = -np.inf
        active.append(int(np.argmax(corr)))
        sub = a[:, active]
        coef, _, rank, _ = np.linalg.lstsq(sub, y, rcond=None)
        if rank < len(active):
            raise DegenerateSystemError(f"active set {sorted(active)} is rank deficient")
        residual = y - sub @ coef

    x = np.zeros(n_cols)
    x[active] = coef
    return OmpResult(tuple(sorted(active)), x, float(np.linalg.norm(residual)))


@dataclass(frozen=True)
class RecoveryStats:
    trials: int
    successes: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


def recovery_trials(matrix, sparsity: int, trials: int, seed: int = 0, atol: float = 1e-8) -> RecoveryStats:
    """Recover ``trials`` random ``sparsity``-sparse signals.

    Supports are uniform without replacement; nonzeros have random sign
    and magnitude uniform in [1, 2].  A trial succeeds when OMP returns
    the true support and every coefficient within ``atol``.
    """
    a = _as_float_matrix(matrix)
    n_cols = a.shape[1]
    rng = np.random.default_rng(seed)
    ok = 0
    for _ in range(int(trials)):
        support = rng.choice(n_cols, size=sparsity, replace=False)
        x = np.zeros(n_cols)
        x[support] = rng.choice((-1.0, 1.0), size=sparsity) * rng.uniform(1.0, 2.0, size=sparsity)
        res = omp_recover(a, a @ x, sparsity)
        if set(res.support) == set(int(s) for s in support) and np.max(np.abs(res.coefficients - x)) <= atol:
            ok += 1
    return RecoveryStats(int(trials), ok)
