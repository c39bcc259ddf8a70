"""Continuous problem data and the uniform space-time grid."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

ScalarMap = Callable[[np.ndarray], np.ndarray]
SpaceTimeMap = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class ProblemSpec:
    """Caputo-form fractional Fokker-Planck problem on ``[a, b] x [0, T]``.

    Solves ``D_t^alpha w = k_alpha w_xx - (f w)_x + g`` with ``w(x, 0) = initial(x)``,
    ``w(a, t) = boundary_left(t)`` and ``w(b, t) = boundary_right(t)``.

    All maps must accept numpy arrays and evaluate elementwise.
    """

    alpha: float
    k_alpha: float
    drift: ScalarMap
    initial: ScalarMap
    boundary_left: Callable[[float], float]
    boundary_right: Callable[[float], float]
    source: Optional[SpaceTimeMap] = None
    a: float = 0.0
    b: float = 1.0
    T: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.k_alpha > 0.0:
            raise ValueError(f"k_alpha must be positive, got {self.k_alpha}")
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if not self.T > 0.0:
            raise ValueError(f"T must be positive, got {self.T}")


@dataclass(frozen=True)
class Grid:
    """Uniform mesh with ``N`` interior nodes and ``L`` time steps."""

    a: float
    b: float
    T: float
    N: int
    L: int

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.N + 1)

    @property
    def dt(self) -> float:
        return self.T / self.L

    @cached_property
    def nodes(self) -> np.ndarray:
        """``x_i = a + i h`` for ``i = 0..N+1``; the endpoints are exactly ``a`` and ``b``."""
        x = self.a + np.arange(self.N + 2) * self.h
        x[0] = self.a
        x[-1] = self.b
        x.flags.writeable = False
        return x

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]

    @cached_property
    def half_points(self) -> np.ndarray:
        """``x_{i+1/2}`` for ``i = 0..N``."""
        x = self.a + (np.arange(self.N + 1) + 0.5) * self.h
        x.flags.writeable = False
        return x

    @cached_property
    def times(self) -> np.ndarray:
        t = np.arange(self.L + 1) * self.dt
        t[-1] = self.T
        t.flags.writeable = False
        return t


def build_grid(a: float, b: float, T: float, N: int, L: int) -> Grid:
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    if int(L) != L or L < 1:
        raise ValueError(f"L must be a positive integer, got {L}")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    return Grid(float(a), float(b), float(T), int(N), int(L))


def grid_for(spec: ProblemSpec, N: int, L: int) -> Grid:
    """Grid over the problem's own domain and horizon."""
    return build_grid(spec.a, spec.b, spec.T, N, L)


def sample_initial(spec: ProblemSpec, grid: Grid) -> np.ndarray:
    """Exact nodal values ``phi(x_1), ..., phi(x_N)``."""
    x = grid.interior
    return np.broadcast_to(np.asarray(spec.initial(x), dtype=float), x.shape).copy()
