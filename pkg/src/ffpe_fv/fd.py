"""Central finite difference comparison scheme with the same L1 time stepping.

The drift flux is differenced at the nodes, ``(f(x_{i+1}) w_{i+1} - f(x_{i-1}) w_{i-1}) / 2h``,
so the system matrix loses the M-matrix property once ``h |f| > 2 k_alpha``.
Rows are scaled by ``h`` to share ``sigma`` and the load convention with the FV scheme.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .assembly import TridiagonalMatrix
from .l1 import caputo_scale, l1_weights
from .problem import Grid, ProblemSpec, sample_initial
from .stepper import SolutionField, boundary_series, march


def fd_system(spec: ProblemSpec, grid: Grid) -> tuple[TridiagonalMatrix, float, float, float]:
    """System matrix, sigma and the two boundary load multipliers."""
    k, h, N = spec.k_alpha, grid.h, grid.N
    sigma = caputo_scale(h, grid.dt, spec.alpha)
    fx = np.broadcast_to(np.asarray(spec.drift(grid.nodes), dtype=float), grid.nodes.shape)
    diag = np.full(N, sigma + 2.0 * k / h)
    lower = -k / h - fx[1:N] / 2.0
    upper = -k / h + fx[2 : N + 1] / 2.0
    left = k / h + fx[0] / 2.0
    right = k / h - fx[N + 1] / 2.0
    return TridiagonalMatrix(lower, diag, upper), sigma, float(left), float(right)


def run_fd(spec: ProblemSpec, grid: Grid, initial: Optional[np.ndarray] = None) -> SolutionField:
    system, sigma, left, right = fd_system(spec, grid)
    weights = l1_weights(spec.alpha, grid.L, scale=sigma)
    W0 = sample_initial(spec, grid) if initial is None else np.asarray(initial, float)
    g1, g2 = boundary_series(spec, grid)
    return march(system, weights, grid, W0, g1, g2, left, right, spec.source)
