"""Implicit time marching for the finite volume scheme."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .assembly import (
    SolverError,
    TridiagonalLU,
    TridiagonalMatrix,
    assemble_diffusion,
    assemble_drift,
    boundary_coefficients,
    system_matrix,
    verify_m_matrix,
)
from .drift import SplitDrift, split_drift
from .l1 import L1Weights, caputo_scale, history_combination, l1_weights
from .problem import Grid, ProblemSpec, sample_initial

PIVOT_FLOOR = 1e-300


@dataclass(frozen=True)
class SolutionField:
    """Nodal history ``values[n, i] = W_i^n`` for ``n = 0..L``, ``i = 0..N+1``."""

    values: np.ndarray
    grid: Grid

    @property
    def interior(self) -> np.ndarray:
        return self.values[:, 1:-1]

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]


@dataclass(frozen=True)
class Discretization:
    """Time-independent pieces of the FV scheme for one (spec, grid) pair."""

    sigma: float
    weights: L1Weights
    split: SplitDrift
    system: TridiagonalMatrix
    load_left: float
    load_right: float


def solve_tridiagonal(M: TridiagonalMatrix, rhs: np.ndarray) -> np.ndarray:
    """Thomas elimination without pivoting.

    Valid for strictly diagonally dominant systems such as the FV system matrix.
    """
    n = M.N
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (n,):
        raise ValueError(f"rhs has shape {rhs.shape}, expected ({n},)")
    lower, diag, upper = M.lower.tolist(), M.diag.tolist(), M.upper.tolist()
    c = [0.0] * n
    d = [0.0] * n
    pivot = diag[0]
    if abs(pivot) < PIVOT_FLOOR:
        raise SolverError("pivot underflow at row 0")
    c[0] = upper[0] / pivot if n > 1 else 0.0
    d[0] = rhs[0] / pivot
    for i in range(1, n):
        pivot = diag[i] - lower[i - 1] * c[i - 1]
        if abs(pivot) < PIVOT_FLOOR:
            raise SolverError(f"pivot underflow at row {i}")
        if i < n - 1:
            c[i] = upper[i] / pivot
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot
    x = [0.0] * n
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return np.array(x)


def discretize(spec: ProblemSpec, grid: Grid, check: bool = True) -> Discretization:
    sigma = caputo_scale(grid.h, grid.dt, spec.alpha)
    weights = l1_weights(spec.alpha, grid.L, scale=sigma)
    split = split_drift(spec.drift, spec.k_alpha, grid)
    A = assemble_diffusion(spec.k_alpha, grid.h, grid.N)
    B = assemble_drift(split, grid.N)
    system = system_matrix(sigma, A, B)
    if check:
        report = verify_m_matrix(system)
        if not report.is_m_matrix:
            raise SolverError(f"system matrix failed the M-matrix check:\n{report}")
    left, right = boundary_coefficients(split, spec.k_alpha, grid.h)
    return Discretization(sigma, weights, split, system, left, right)


def step(
    history: np.ndarray,
    n: int,
    system: Union[TridiagonalMatrix, TridiagonalLU],
    weights: L1Weights,
    load: np.ndarray,
    source: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Interior solution ``W^n`` given interior rows ``W^0..W^{n-1}``.

    ``load`` is the boundary vector ``d^n``; ``source`` is the already
    integrated term ``h g(x_i, t_n)``. ``weights.scale`` must hold sigma.
    """
    if weights.scale is None:
        raise ValueError("weights carry no scale; build them with scale=sigma")
    rhs = weights.scale * history_combination(history, weights, n) + load
    if source is not None:
        rhs = rhs + source
    if isinstance(system, TridiagonalMatrix):
        system = system.factorize()
    return system.solve(rhs)


def march(
    system: TridiagonalMatrix,
    weights: L1Weights,
    grid: Grid,
    initial: np.ndarray,
    g1: np.ndarray,
    g2: np.ndarray,
    load_left: float,
    load_right: float,
    source=None,
) -> SolutionField:
    """Shared time loop for any tridiagonal L1 scheme with Dirichlet data.

    ``g1``/``g2`` are boundary values at every ``t_n``; ``source(x, t)`` is
    integrated as ``h g(x_i, t_n)``.
    """
    N, L = grid.N, grid.L
    sigma = weights.scale
    lu = system.factorize()
    x = grid.interior
    values = np.empty((L + 1, N + 2))
    values[:, 0] = g1
    values[:, -1] = g2
    values[0, 1:-1] = initial
    for n in range(1, L + 1):
        # full rows keep the history slice contiguous; boundary columns are dropped after
        rhs = sigma * (weights.coefficients(n) @ values[:n])[1:-1]
        rhs[0] += load_left * g1[n]
        rhs[-1] += load_right * g2[n]
        if source is not None:
            rhs += grid.h * np.asarray(source(x, grid.times[n]), dtype=float)
        values[n, 1:-1] = lu.solve(rhs)
    return SolutionField(values, grid)


def boundary_series(spec: ProblemSpec, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    g1 = np.array([spec.boundary_left(t) for t in grid.times], dtype=float)
    g2 = np.array([spec.boundary_right(t) for t in grid.times], dtype=float)
    return g1, g2


def run(
    spec: ProblemSpec, grid: Grid, initial: Optional[np.ndarray] = None
) -> SolutionField:
    """Solve with the monotone FV scheme.

    ``initial`` overrides the sampled initial profile (length ``N``).
    """
    disc = discretize(spec, grid)
    W0 = sample_initial(spec, grid) if initial is None else np.asarray(initial, float)
    if W0.shape != (grid.N,):
        raise ValueError(f"initial has shape {W0.shape}, expected ({grid.N},)")
    g1, g2 = boundary_series(spec, grid)
    return march(
        disc.system, disc.weights, grid, W0, g1, g2,
        disc.load_left, disc.load_right, spec.source,
    )
