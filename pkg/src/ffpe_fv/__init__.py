"""Monotone finite volume scheme for the time-fractional Fokker-Planck equation.

Caputo-form problem ``D_t^alpha w = k_alpha w_xx - (f w)_x + g`` on ``[a, b]``
with Dirichlet data, discretized by L1 time stepping and a flux that blends
central differencing with upwinding so that the system matrix is always an
M-matrix.
"""

from .assembly import (
    MMatrixReport,
    SolverError,
    TridiagonalMatrix,
    assemble_diffusion,
    assemble_drift,
    boundary_load,
    system_matrix,
    verify_m_matrix,
)
from .catalog import CatalogProblem, PolynomialDrift, catalog, get_problem
from .drift import SplitDrift, split_drift
from .fd import run_fd
from .l1 import L1Weights, caputo_scale, history_combination, l1_weights
from .problem import Grid, ProblemSpec, build_grid, grid_for, sample_initial
from .stepper import SolutionField, run, solve_tridiagonal, step
from .verification import (
    ErrorSummary,
    convergence_rate,
    dense_oracle_run,
    discrete_l1_norm,
    error_summary,
    residual_check,
)

__all__ = [
    "CatalogProblem", "ErrorSummary", "Grid", "L1Weights", "MMatrixReport",
    "PolynomialDrift", "ProblemSpec", "SolutionField", "SolverError", "SplitDrift",
    "TridiagonalMatrix", "assemble_diffusion", "assemble_drift", "boundary_load",
    "build_grid", "caputo_scale", "catalog", "convergence_rate", "dense_oracle_run",
    "discrete_l1_norm", "error_summary", "get_problem", "grid_for", "history_combination",
    "l1_weights", "residual_check", "run", "run_fd", "sample_initial", "solve_tridiagonal",
    "split_drift", "step", "system_matrix", "verify_m_matrix",
]
