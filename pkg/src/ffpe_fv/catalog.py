"""Named test problems, including manufactured solutions of the form ``w = t^2 u(x)``."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, Optional

import numpy as np

from .problem import ProblemSpec


@dataclass(frozen=True)
class PolynomialDrift:
    """``f(x) = c0 + c1 x + c2 x^2``."""

    c0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.c0 + x * (self.c1 + self.c2 * x)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return self.c1 + 2.0 * self.c2 * x

    def max_abs(self, a: float, b: float) -> float:
        pts = [a, b]
        if self.c2 != 0.0:
            vertex = -self.c1 / (2.0 * self.c2)
            if a < vertex < b:
                pts.append(vertex)
        return float(np.max(np.abs(self(np.array(pts)))))


@dataclass(frozen=True)
class SpatialProfile:
    """A smooth ``u(x)`` with its first two derivatives."""

    u: Callable
    du: Callable
    d2u: Callable


@dataclass(frozen=True)
class CatalogProblem:
    name: str
    spec: ProblemSpec
    exact: Optional[Callable] = None
    description: str = ""


def _zero_t(t):
    return 0.0


def _t_squared(t):
    return t * t


def manufactured_source(
    profile: SpatialProfile, drift: PolynomialDrift, alpha: float, k_alpha: float
):
    """Source making ``w = t^2 u(x)`` exact for the Caputo-form equation.

    Uses ``D_t^alpha t^2 = Gamma(3)/Gamma(3-alpha) t^(2-alpha)`` and
    ``(f w)_x = f' w + f w_x``.
    """
    cap = math.gamma(3.0) / math.gamma(3.0 - alpha)

    def source(x, t):
        x = np.asarray(x, dtype=float)
        u = profile.u(x)
        spatial = -k_alpha * profile.d2u(x) + drift.derivative(x) * u + drift(x) * profile.du(x)
        return cap * t ** (2.0 - alpha) * u + t * t * spatial

    return source


def manufactured_problem(
    name: str,
    profile: SpatialProfile,
    drift: PolynomialDrift,
    alpha: float,
    k_alpha: float,
    description: str = "",
) -> CatalogProblem:
    u0 = float(profile.u(np.array(0.0)))
    u1 = float(profile.u(np.array(1.0)))
    spec = ProblemSpec(
        alpha=alpha,
        k_alpha=k_alpha,
        drift=drift,
        initial=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        boundary_left=lambda t: t * t * u0,
        boundary_right=lambda t: t * t * u1,
        source=manufactured_source(profile, drift, alpha, k_alpha),
    )

    def exact(x, t):
        return t * t * profile.u(np.asarray(x, dtype=float))

    return CatalogProblem(name, spec, exact, description)


COSINE = SpatialProfile(
    u=lambda x: np.cos(np.pi * x),
    du=lambda x: -np.pi * np.sin(np.pi * x),
    d2u=lambda x: -np.pi**2 * np.cos(np.pi * x),
)

_E10M1 = math.expm1(10.0)

# u = 1 + (1 - e^{10x}) / (e^{10} - 1): u(0) = 1, u(1) = 0, steep layer at x = 1
BOUNDARY_LAYER = SpatialProfile(
    u=lambda x: -np.expm1(10.0 * (x - 1.0)) * (math.exp(10.0) / _E10M1) + 0.0,
    du=lambda x: -10.0 * np.exp(10.0 * x) / _E10M1,
    d2u=lambda x: -100.0 * np.exp(10.0 * x) / _E10M1,
)


def example41(alpha: float = 0.5, k_alpha: float = 1.0, drift: Optional[PolynomialDrift] = None):
    drift = drift or PolynomialDrift(400.0, 1.0, -1.0)
    return manufactured_problem(
        "example41", COSINE, drift, alpha, k_alpha,
        "w = t^2 cos(pi x), f = (x - x^2) + 400",
    )


def example42_case1(alpha: float = 0.5, k_alpha: float = 1.0, drift: Optional[PolynomialDrift] = None):
    drift = drift or PolynomialDrift(40.0, 1.0, -1.0)
    return manufactured_problem(
        "example42_case1", BOUNDARY_LAYER, drift, alpha, k_alpha,
        "w = t^2 (1 + (1 - e^{10x})/(e^{10} - 1)), f = (x - x^2) + 40",
    )


def _zero_x(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def example42_case2(alpha: float = 0.5, k_alpha: float = 1.0, drift: Optional[PolynomialDrift] = None):
    spec = ProblemSpec(
        alpha=alpha, k_alpha=k_alpha, drift=drift or PolynomialDrift(40.0, 1.0, -1.0),
        initial=_zero_x, boundary_left=_zero_t, boundary_right=_zero_t,
    )
    return CatalogProblem("example42_case2", spec, lambda x, t: _zero_x(x), "all data zero")


def example42_case2_demo(
    alpha: float = 0.5,
    k_alpha: float = 1.0,
    drift: Optional[PolynomialDrift] = None,
    side: str = "right",
):
    """Case 2 driven by ``t^2`` on one boundary; a reconstruction with no known exact solution.

    Driving the right boundary, against the drift, is what makes the central
    scheme undershoot below zero on coarse grids.
    """
    base = example42_case2(alpha, k_alpha, drift)
    if side == "right":
        spec = replace(base.spec, boundary_right=_t_squared)
    elif side == "left":
        spec = replace(base.spec, boundary_left=_t_squared)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return CatalogProblem(
        "example42_case2_demo", spec, None,
        f"reconstructed nonnegativity demo: f = (x - x^2) + 40, t^2 on the {side} boundary",
    )


def zero(alpha: float = 0.5, k_alpha: float = 1.0, drift: Optional[PolynomialDrift] = None):
    spec = ProblemSpec(
        alpha=alpha, k_alpha=k_alpha, drift=drift or PolynomialDrift(),
        initial=_zero_x, boundary_left=_zero_t, boundary_right=_zero_t,
    )
    return CatalogProblem("zero", spec, lambda x, t: _zero_x(x), "all data zero")


def constant(c: float = 1.0, alpha: float = 0.5, k_alpha: float = 1.0, drift: Optional[PolynomialDrift] = None):
    """Constant data with zero drift; the exact solution is ``c``."""
    spec = ProblemSpec(
        alpha=alpha, k_alpha=k_alpha, drift=drift or PolynomialDrift(),
        initial=lambda x: np.full_like(np.asarray(x, dtype=float), c),
        boundary_left=lambda t: c, boundary_right=lambda t: c,
    )
    exact = None if drift is not None and drift != PolynomialDrift() else (
        lambda x, t: np.full_like(np.asarray(x, dtype=float), c)
    )
    return CatalogProblem("constant", spec, exact, f"w = {c}")


BUILDERS: Dict[str, Callable[..., CatalogProblem]] = {
    "example41": example41,
    "example42_case1": example42_case1,
    "example42_case2": example42_case2,
    "example42_case2_demo": example42_case2_demo,
    "zero": zero,
    "constant": constant,
}


def get_problem(name: str, **params) -> CatalogProblem:
    """Look up a catalog problem; ``params`` go to its builder (``None`` values are dropped)."""
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; available: {', '.join(sorted(BUILDERS))}"
        ) from None
    return builder(**{k: v for k, v in params.items() if v is not None})


def catalog() -> list[CatalogProblem]:
    return [
        example41(0.2), example41(0.5), example41(0.8),
        example42_case1(), example42_case2(), example42_case2_demo(),
        zero(), constant(1.0),
    ]
