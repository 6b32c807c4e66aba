import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihr_nef.errors import ConvergenceError, DomainError
from ihr_nef.numerics import (
    DEFAULT_TOL,
    ToleranceConfig,
    find_root_monotone,
    integrate_adaptive,
    minimize_unimodal,
)


def test_tolerance_defaults_and_validation():
    assert DEFAULT_TOL.rel_tol == 1e-10 and DEFAULT_TOL.abs_tol == 1e-12
    with pytest.raises(DomainError):
        ToleranceConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        ToleranceConfig(max_iterations=3)


@pytest.mark.parametrize(
    "f, lo, hi, exact",
    [
        (lambda x: math.exp(-x), 0.0, math.inf, 1.0),
        (lambda x: math.exp(-0.5 * x * x), -math.inf, math.inf, math.sqrt(2 * math.pi)),
        (lambda x: 1.0 / (1.0 + x * x), -math.inf, 0.0, math.pi / 2),
        (math.sin, 0.0, math.pi, 2.0),
        (lambda x: math.sqrt(x), 0.0, 1.0, 2.0 / 3.0),
        (lambda x: x**-0.5 if x > 0 else 0.0, 0.0, 4.0, 4.0),
    ],
)
def test_integrate_known_values(f, lo, hi, exact):
    res = integrate_adaptive(f, lo, hi)
    assert res.value == pytest.approx(exact, rel=1e-9)
    assert res.subdivisions >= 1


def test_integrate_reversed_and_empty():
    assert integrate_adaptive(math.cos, 1.0, 0.0).value == pytest.approx(-math.sin(1.0), rel=1e-12)
    assert integrate_adaptive(math.cos, 2.0, 2.0).value == 0.0


def test_integrate_nonfinite_integrand():
    with pytest.raises(DomainError, match="integrand not finite"):
        integrate_adaptive(lambda x: math.inf, 0.0, 1.0)


def test_integrate_gives_up():
    cfg = ToleranceConfig(max_subdivisions=10)
    with pytest.raises(ConvergenceError):
        integrate_adaptive(lambda x: math.sin(1.0 / x) if x else 0.0, 0.0, 1.0, cfg)


def test_root_not_bracketed():
    with pytest.raises(DomainError, match="root not bracketed"):
        find_root_monotone(lambda x: x * x + 1.0, -1.0, 1.0)


def test_root_of_y_minus_log_y():
    # y - log y = 2 on [1, inf); mpmath.findroot gives 3.14619322062058
    y = find_root_monotone(lambda v: v - math.log(v) - 2.0, 2.0, 4.0)
    assert y == pytest.approx(3.14619322062058, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50), st.floats(0.1, 20))
def test_root_residual_bound(shift, scale):
    f = lambda x: math.tanh(scale * (x - shift))
    lo, hi = shift - 10.0, shift + 7.0
    x = find_root_monotone(f, lo, hi)
    assert lo <= x <= hi
    assert abs(f(x)) <= 10 * DEFAULT_TOL.abs_tol or abs(x - shift) <= 1e-12 * max(1, abs(shift))


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5))
def test_newton_and_secant_agree(c):
    f = lambda x: x**3 + x - c
    a = find_root_monotone(f, -3, 3)
    b = find_root_monotone(f, -3, 3, fprime=lambda x: 3 * x * x + 1)
    assert a == pytest.approx(b, abs=1e-11)


def test_minimize_cosh_minus_linear():
    # min of cosh u - u is at asinh(1)
    x, v = minimize_unimodal(lambda u: math.cosh(u) - u, -2.0, 3.0)
    assert v == pytest.approx(math.sqrt(2) - math.asinh(1.0), abs=1e-14)
    assert x == pytest.approx(math.asinh(1.0), abs=1e-7)
    x, _ = minimize_unimodal(lambda u: math.cosh(u) - u, -2.0, 3.0, fprime=lambda u: math.sinh(u) - 1)
    assert x == pytest.approx(math.asinh(1.0), abs=1e-12)


def test_minimize_kummer_example():
    # 2 cosh(x/2) - x - 1 has its minimum at 2 asinh(1)
    x, v = minimize_unimodal(lambda t: 2 * math.cosh(0.5 * t) - t - 1.0, 0.0, 5.0)
    assert x == pytest.approx(1.762747174, abs=1e-6)
    assert v == pytest.approx(0.0656799507, abs=1e-9)


def test_minimize_endpoint():
    x, v = minimize_unimodal(lambda t: t, 1.0, 2.0)
    assert (x, v) == (1.0, 1.0)
