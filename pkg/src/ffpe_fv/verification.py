"""Error norms, convergence rates and independent correctness oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .assembly import SolverError
from .l1 import l1_weights
from .problem import Grid, ProblemSpec
from .stepper import SolutionField

ORACLE_MAX_N = 64
ORACLE_MAX_L = 256
# rows whose terms are subnormal carry no relative precision
_SCALE_FLOOR = np.finfo(float).tiny / np.finfo(float).eps


@dataclass(frozen=True)
class ErrorSummary:
    """Maxima over ``n = 1..L`` of the discrete L1 and max norms of ``w - W``."""

    max_l1: float
    max_inf: float
    per_step_l1: Optional[np.ndarray] = None
    per_step_inf: Optional[np.ndarray] = None


def discrete_l1_norm(v: np.ndarray, h: float) -> float:
    return float(h * np.sum(np.abs(v)))


def error_summary(field: SolutionField, exact: Callable) -> ErrorSummary:
    grid = field.grid
    x = grid.interior
    W = field.interior[1:]
    w = np.stack([np.broadcast_to(exact(x, t), x.shape) for t in grid.times[1:]])
    e = np.abs(w - W)
    l1 = grid.h * e.sum(axis=1)
    inf = e.max(axis=1)
    return ErrorSummary(float(l1.max()), float(inf.max()), l1, inf)


def convergence_rate(
    err_coarse: float, err_fine: float, size_coarse: float, size_fine: float
) -> float:
    """``|ln(err_fine/err_coarse) / ln(size_fine/size_coarse)|``."""
    if err_coarse <= 0 or err_fine <= 0:
        raise ValueError("errors must be positive to define a rate")
    if size_coarse <= 0 or size_fine <= 0:
        raise ValueError("grid sizes must be positive")
    if size_coarse == size_fine:
        raise ValueError("grid sizes must differ to define a rate")
    return abs(math.log(err_fine / err_coarse) / math.log(size_fine / size_coarse))


def oscillation_count(profile: np.ndarray) -> int:
    """Sign changes between successive differences of a profile (zeros skipped)."""
    s = np.sign(np.diff(profile))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


# ---------------------------------------------------------------------------
# oracles: deliberately literal, loop-based, and assembled from the flux form


def _flux_coefficients(spec: ProblemSpec, grid: Grid):
    """Per half-point coefficients of ``W_i`` and ``W_{i+1}`` in the numerical flux

    ``F_{i+1/2} = -k (W_{i+1} - W_i)/h + fm (W_i + W_{i+1})/2 + fu W_i + fl W_{i+1}``,

    followed by the sums of the magnitudes of the pieces making up each coefficient.
    """
    k, h = spec.k_alpha, grid.h
    threshold = 2.0 * k / h
    left, right, left_mag, right_mag = [], [], [], []
    for xh in grid.half_points:
        fx = float(spec.drift(np.array(xh)))
        fu = max(fx - threshold, 0.0)
        fl = min(fx + threshold, 0.0)
        fm = fx - fu - fl
        left.append(k / h + fm / 2.0 + fu)
        right.append(-k / h + fm / 2.0 + fl)
        left_mag.append(k / h + abs(fm) / 2.0 + fu)
        right_mag.append(k / h + abs(fm) / 2.0 - fl)
    return left, right, left_mag, right_mag


def _dense_lu(M):
    """Doolittle LU with partial pivoting on a list-of-lists copy."""
    n = len(M)
    U = [row[:] for row in M]
    Lf = [[0.0] * n for _ in range(n)]
    perm = list(range(n))
    for col in range(n):
        p = max(range(col, n), key=lambda r: abs(U[r][col]))
        if abs(U[p][col]) < 1e-300:
            raise SolverError(f"dense oracle: singular pivot in column {col}")
        U[col], U[p] = U[p], U[col]
        Lf[col], Lf[p] = Lf[p], Lf[col]
        perm[col], perm[p] = perm[p], perm[col]
        for r in range(col + 1, n):
            m = U[r][col] / U[col][col]
            Lf[r][col] = m
            for c in range(col, n):
                U[r][c] -= m * U[col][c]
    return Lf, U, perm


def _dense_solve(Lf, U, perm, b):
    n = len(b)
    y = [0.0] * n
    for i in range(n):
        y[i] = b[perm[i]] - sum(Lf[i][j] * y[j] for j in range(i))
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - sum(U[i][j] * x[j] for j in range(i + 1, n))) / U[i][i]
    return x


def dense_oracle_run(spec: ProblemSpec, grid: Grid, initial=None) -> SolutionField:
    """The FV scheme rebuilt row by row from the numerical fluxes, solved densely."""
    N, L, h, dt, alpha = grid.N, grid.L, grid.h, grid.dt, spec.alpha
    if N > ORACLE_MAX_N or L > ORACLE_MAX_L:
        raise ValueError(f"oracle is limited to N <= {ORACLE_MAX_N}, L <= {ORACLE_MAX_L}")
    sigma = h * dt**-alpha / math.gamma(2.0 - alpha)
    a = [(k + 1) ** (1.0 - alpha) - k ** (1.0 - alpha) for k in range(L)]
    cl, cr, _, _ = _flux_coefficients(spec, grid)
    x = [float(v) for v in grid.interior]

    # row i (1-based node): sigma W_i + F_{i+1/2} - F_{i-1/2} = sigma * history + h g_i
    M = [[0.0] * N for _ in range(N)]
    for r in range(N):
        M[r][r] = sigma + cl[r + 1] - cr[r]
        if r > 0:
            M[r][r - 1] = -cl[r]
        if r < N - 1:
            M[r][r + 1] = cr[r + 1]
    Lf, U, perm = _dense_lu(M)

    W = [[0.0] * (N + 2) for _ in range(L + 1)]
    if initial is None:
        init = [float(spec.initial(np.array(xi))) for xi in x]
    else:
        init = [float(v) for v in initial]
    for n in range(L + 1):
        t = float(grid.times[n])
        W[n][0] = float(spec.boundary_left(t))
        W[n][N + 1] = float(spec.boundary_right(t))
    W[0][1 : N + 1] = init

    for n in range(1, L + 1):
        t = float(grid.times[n])
        rhs = []
        for r in range(N):
            i = r + 1
            hist = a[n - 1] * W[0][i]
            for k in range(1, n):
                hist += (a[n - k - 1] - a[n - k]) * W[k][i]
            value = sigma * hist
            if spec.source is not None:
                value += h * float(spec.source(np.array(x[r]), t))
            rhs.append(value)
        rhs[0] += cl[0] * W[n][0]
        rhs[-1] -= cr[N] * W[n][N + 1]
        W[n][1 : N + 1] = _dense_solve(Lf, U, perm, rhs)
    return SolutionField(np.array(W), grid)


def residual_check(
    field: SolutionField, spec: ProblemSpec, grid: Grid, relative: bool = False
) -> float:
    """Largest defect of a computed field in the flux-form FV equations.

    With ``relative=True`` each row's defect is divided by the sum of the
    magnitudes of the terms entering that row (floored just above the
    subnormal range).
    """
    W = field.values
    N, L, h = grid.N, grid.L, grid.h
    if L == 0 or N == 0:
        return 0.0
    sigma = h * grid.dt**-spec.alpha / math.gamma(2.0 - spec.alpha)
    weights = l1_weights(spec.alpha, L)
    cl, cr, cl_mag, cr_mag = (np.array(c) for c in _flux_coefficients(spec, grid))
    x = grid.interior
    worst = 0.0
    for n in range(1, L + 1):
        c = weights.coefficients(n)
        hist = c @ W[:n, 1:-1]
        hist_mag = np.abs(c) @ np.abs(W[:n, 1:-1])
        row = W[n]
        flux_terms = cl * row[:-1], cr * row[1:]
        flux = flux_terms[0] + flux_terms[1]
        flux_mag = cl_mag * np.abs(row[:-1]) + cr_mag * np.abs(row[1:])
        g = np.zeros(N)
        if spec.source is not None:
            g = h * np.broadcast_to(np.asarray(spec.source(x, grid.times[n]), float), x.shape)
        res = sigma * (row[1:-1] - hist) + flux[1:] - flux[:-1] - g
        if relative:
            scale = sigma * (np.abs(row[1:-1]) + hist_mag) + flux_mag[1:] + flux_mag[:-1] + np.abs(g)
            res = np.abs(res) / np.maximum(scale, _SCALE_FLOOR)
        worst = max(worst, float(np.max(np.abs(res))))
    return worst
