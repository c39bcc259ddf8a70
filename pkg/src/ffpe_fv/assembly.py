"""Tridiagonal operators of the finite volume scheme and the M-matrix check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import linalg
from scipy.linalg import lapack

from .drift import SplitDrift


class SolverError(RuntimeError):
    """A linear solve could not be completed (singular or degenerate pivot)."""


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Row-wise band storage: ``lower[i] = M[i+1, i]``, ``upper[i] = M[i, i+1]``."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.diag)
        if n < 1 or len(self.lower) != n - 1 or len(self.upper) != n - 1:
            raise ValueError(
                f"band lengths {len(self.lower)}/{n}/{len(self.upper)} are inconsistent"
            )

    @property
    def N(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        return (
            np.diag(self.diag)
            + np.diag(self.lower, -1)
            + np.diag(self.upper, 1)
        )

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[1:] += self.lower * x[:-1]
        y[:-1] += self.upper * x[1:]
        return y

    def column_sums(self) -> np.ndarray:
        s = self.diag.copy()
        s[:-1] += self.lower
        s[1:] += self.upper
        return s

    def __add__(self, other: "TridiagonalMatrix") -> "TridiagonalMatrix":
        if self.N != other.N:
            raise ValueError(f"order mismatch: {self.N} vs {other.N}")
        return TridiagonalMatrix(
            self.lower + other.lower, self.diag + other.diag, self.upper + other.upper
        )

    def factorize(self) -> "TridiagonalLU":
        return TridiagonalLU(self)


@dataclass(frozen=True)
class TridiagonalLU:
    """LU factorization (LAPACK ``gttrf``), reused across right-hand sides."""

    matrix: TridiagonalMatrix
    _factors: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        m = self.matrix
        if m.N <= 2:
            # scipy's gttrf wrapper rejects orders below 3
            dense = m.to_dense()
            if abs(np.linalg.det(dense)) == 0.0:
                raise SolverError("tridiagonal factorization failed: singular matrix")
            object.__setattr__(self, "_factors", linalg.lu_factor(dense))
            return
        dl, d, du, du2, ipiv, info = lapack.dgttrf(m.lower, m.diag, m.upper)
        if info != 0:
            raise SolverError(f"tridiagonal factorization failed: zero pivot at row {info}")
        object.__setattr__(self, "_factors", (dl, d, du, du2, ipiv))

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.matrix.N <= 2:
            return linalg.lu_solve(self._factors, rhs)
        x, info = lapack.dgttrs(*self._factors, rhs)
        if info != 0:
            raise SolverError(f"dgttrs returned info={info}")
        return x


@dataclass(frozen=True)
class MMatrixReport:
    is_m_matrix: bool
    min_column_slack: float
    offending_indices: List[int]

    def __str__(self) -> str:
        status = "M-matrix" if self.is_m_matrix else "NOT an M-matrix"
        lines = [
            f"status: {status}",
            f"min_column_slack: {self.min_column_slack:.17g}",
            f"offending_indices: {self.offending_indices}",
        ]
        return "\n".join(lines)


def assemble_diffusion(k_alpha: float, h: float, N: int) -> TridiagonalMatrix:
    off = np.full(N - 1, -k_alpha / h)
    return TridiagonalMatrix(off, np.full(N, 2.0 * k_alpha / h), off.copy())


def assemble_drift(split: SplitDrift, N: int) -> TridiagonalMatrix:
    """Drift operator ``B`` from the split flux.

    Column ``j`` (1-based) of ``B`` has diagonal
    ``-fm_{j-1/2}/2 + fm_{j+1/2}/2 - fl_{j-1/2} + fu_{j+1/2}``, subdiagonal
    ``B[j+1, j] = -fm_{j+1/2}/2 - fu_{j+1/2}`` and superdiagonal
    ``B[j-1, j] = fm_{j-1/2}/2 + fl_{j-1/2}``. Half-point ``x_{i+1/2}`` is
    index ``i`` of the split arrays.
    """
    fm, fu, fl = split.fm, split.fu, split.fl
    if len(fm) != N + 1:
        raise ValueError(f"split has {len(fm)} half-points, expected {N + 1}")
    diag = -fm[:-1] / 2 + fm[1:] / 2 - fl[:-1] + fu[1:]
    # B[r+1, r] uses the half-point between nodes r+1 and r+2 (1-based), i.e. index r+1
    lower = -fm[1:-1] / 2 - fu[1:-1]
    upper = fm[1:-1] / 2 + fl[1:-1]
    return TridiagonalMatrix(lower, diag, upper)


def boundary_coefficients(split: SplitDrift, k_alpha: float, h: float) -> tuple[float, float]:
    """Multipliers of ``g1(t_n)`` (row 1) and ``g2(t_n)`` (row N) in the load vector."""
    left = split.fm[0] / 2 + split.fu[0] + k_alpha / h
    right = -split.fm[-1] / 2 - split.fl[-1] + k_alpha / h
    return float(left), float(right)


def boundary_load(
    split: SplitDrift, k_alpha: float, h: float, g1_val: float, g2_val: float
) -> np.ndarray:
    N = len(split.fm) - 1
    left, right = boundary_coefficients(split, k_alpha, h)
    d = np.zeros(N)
    d[0] += left * g1_val
    d[-1] += right * g2_val
    return d


def system_matrix(
    sigma: float, A: TridiagonalMatrix, B: TridiagonalMatrix
) -> TridiagonalMatrix:
    if A.N != B.N:
        raise ValueError(f"order mismatch: A is {A.N}, B is {B.N}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    S = A + B
    return TridiagonalMatrix(S.lower, S.diag + sigma, S.upper)


def verify_m_matrix(M: TridiagonalMatrix) -> MMatrixReport:
    """Sufficient M-matrix test: positive diagonal, non-positive off-diagonals,
    strict column diagonal dominance. No tolerance is applied."""
    off_abs = np.zeros(M.N)
    off_abs[:-1] += np.abs(M.lower)
    off_abs[1:] += np.abs(M.upper)
    slack = M.diag - off_abs

    bad = set(np.flatnonzero(M.diag <= 0).tolist())
    bad.update(np.flatnonzero(slack <= 0).tolist())
    # a positive off-diagonal is charged to its column
    bad.update(np.flatnonzero(M.lower > 0).tolist())
    bad.update((np.flatnonzero(M.upper > 0) + 1).tolist())
    return MMatrixReport(
        is_m_matrix=not bad,
        min_column_slack=float(slack.min()),
        offending_indices=sorted(bad),
    )
