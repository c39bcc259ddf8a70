import math

import numpy as np
import pytest
from scipy import integrate

from ffpe_fv.catalog import (
    BOUNDARY_LAYER,
    COSINE,
    PolynomialDrift,
    catalog,
    example41,
    example42_case1,
    get_problem,
)

sympy = pytest.importorskip("sympy")


def symbolic_source(u_expr, drift_coeffs, alpha, k):
    """Substitute w = t^2 u(x) into D_t^alpha w = k w_xx - (f w)_x + g and solve for g."""
    x, t = sympy.symbols("x t", positive=True)
    al = sympy.Rational(alpha).limit_denominator(1000)
    f = drift_coeffs[0] + drift_coeffs[1] * x + drift_coeffs[2] * x**2
    w = t**2 * u_expr(x)
    caputo = sympy.gamma(3) / sympy.gamma(3 - al) * t ** (2 - al) * u_expr(x)
    g = caputo - k * sympy.diff(w, x, 2) + sympy.diff(f * w, x)
    return sympy.lambdify((x, t), g, "mpmath")


def caputo_t2_by_quadrature(t, alpha):
    """(1/Gamma(1-alpha)) int_0^t 2 eta (t - eta)^-alpha d eta, via weighted quadrature."""
    val, _ = integrate.quad(lambda s: 2 * s, 0, t, weight="alg", wvar=(0, -alpha))
    return val / math.gamma(1 - alpha)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("t", [0.1, 0.7, 1.0])
def test_caputo_closed_form_for_t_squared(alpha, t):
    closed = math.gamma(3) / math.gamma(3 - alpha) * t ** (2 - alpha)
    assert caputo_t2_by_quadrature(t, alpha) == pytest.approx(closed, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_example41_source_matches_symbolic(alpha):
    problem = example41(alpha)
    oracle = symbolic_source(lambda x: sympy.cos(sympy.pi * x), (400, 1, -1), alpha, 1)
    for x in np.linspace(0, 1, 7):
        for t in (0.0, 0.3, 1.0):
            got = problem.spec.source(np.array(x), t)
            assert float(got) == pytest.approx(float(oracle(x, t)), rel=1e-12, abs=1e-10)


def test_case1_source_matches_symbolic():
    problem = example42_case1()
    u = lambda x: 1 + (1 - sympy.exp(10 * x)) / (sympy.exp(10) - 1)  # noqa: E731
    oracle = symbolic_source(u, (40, 1, -1), 0.5, 1)
    for x in np.linspace(0, 1, 9):
        for t in (0.0, 0.5, 1.0):
            got = float(problem.spec.source(np.array(x), t))
            assert got == pytest.approx(float(oracle(x, t)), rel=1e-11, abs=1e-10)


def test_example41_exact_values():
    p = example41(0.5)
    assert p.exact(np.array(0.0), 1.0) == 1.0
    assert p.exact(np.linspace(0, 1, 3), 1.0)[1] == pytest.approx(0.0, abs=1e-16)
    assert p.spec.source(np.array(0.0), 0.0) == 0.0
    assert p.spec.boundary_left(0.5) == 0.25 and p.spec.boundary_right(0.5) == -0.25


def test_boundary_layer_profile():
    assert BOUNDARY_LAYER.u(np.array(0.0)) == pytest.approx(1.0, rel=1e-15)
    assert BOUNDARY_LAYER.u(np.array(1.0)) == 0.0
    x = np.linspace(0, 1, 11)
    ref = 1 + (1 - np.exp(10 * x)) / (np.exp(10) - 1)
    np.testing.assert_allclose(BOUNDARY_LAYER.u(x), ref, rtol=1e-12, atol=1e-15)
    # derivatives against central differences
    for prof in (BOUNDARY_LAYER, COSINE):
        eps = 1e-5
        xs = np.linspace(0.1, 0.9, 5)
        np.testing.assert_allclose(
            prof.du(xs), (prof.u(xs + eps) - prof.u(xs - eps)) / (2 * eps), rtol=1e-7, atol=1e-6
        )
        np.testing.assert_allclose(
            prof.d2u(xs), (prof.du(xs + eps) - prof.du(xs - eps)) / (2 * eps), rtol=1e-7, atol=1e-6
        )


def test_traces_match_exact():
    for problem in catalog():
        if problem.exact is None:
            continue
        s = problem.spec
        x = np.linspace(s.a, s.b, 13)
        np.testing.assert_allclose(s.initial(x), problem.exact(x, 0.0), atol=1e-15)
        for t in (0.0, 0.4, 1.0):
            assert s.boundary_left(t) == pytest.approx(float(problem.exact(np.array(s.a), t)), abs=1e-15)
            assert s.boundary_right(t) == pytest.approx(float(problem.exact(np.array(s.b), t)), abs=1e-15)


def test_catalog_lookup():
    assert get_problem("example41", alpha=0.2).spec.alpha == 0.2
    assert get_problem("constant", c=2.5).spec.boundary_left(0.3) == 2.5
    with pytest.raises(KeyError, match="bogus"):
        get_problem("bogus")
    with pytest.raises(ValueError):
        get_problem("example42_case2_demo", side="middle")


def test_polynomial_drift():
    f = PolynomialDrift(400, 1, -1)
    assert f(np.array(0.5)) == 400.25
    assert f.derivative(np.array(0.25)) == 0.5
    assert f.max_abs(0, 1) == 400.25
    assert PolynomialDrift(-1e4, 3).max_abs(0, 1) == 1e4
