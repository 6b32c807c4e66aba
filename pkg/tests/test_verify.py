import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihr_nef import families as fam
from ihr_nef import mixture as mx
from ihr_nef import verify as vf
from ihr_nef.errors import DomainError
from ihr_nef.families import make_family


def test_linspace():
    assert vf.linspace(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(DomainError):
        vf.linspace(0.0, 1.0, 1)


def test_hazard_monotone_feasible_plans():
    pl = mx.build_plan(make_family("normal:1"), 0.0, 0.9, 0.3)
    rep = vf.check_hazard_monotone(pl, -8.0, 8.0, 401)
    assert rep.monotone and len(rep.xs) == 401
    assert rep.max_drop <= 1e-8 * max(rep.hazard)
    # h = f/S on the grid
    for f, s, h in zip(rep.density, rep.survival, rep.hazard):
        assert h == pytest.approx(f / s, rel=1e-12)


def test_hazard_monotone_detects_decrease():
    # mixtures of exponentials have decreasing hazard
    pl = mx.plan_from_weights(make_family("gamma:1"), 1.0, 2.0, 0.5)
    rep = vf.check_hazard_monotone(pl, 0.01, 10.0, 201)
    assert not rep.monotone
    assert rep.max_drop > 0 and rep.min_functional < 0
    assert rep.drop_location == pytest.approx(0.01)


def test_hazard_monotone_arguments():
    pl = mx.build_plan(make_family("normal:1"), 0.0, 0.9, 0.3)
    with pytest.raises(DomainError):
        vf.check_hazard_monotone(pl, -1.0, 1.0, 50)
    with pytest.raises(DomainError):
        vf.check_hazard_monotone(pl, 1.0, -1.0, 200)
    with pytest.raises(DomainError, match="survival underflow"):
        vf.check_hazard_monotone(pl, 0.0, 60.0, 200)


@pytest.mark.parametrize(
    "spec, lam, tol",
    [("ressel:1", 1.0, 1e-6), ("hc:2", 0.7, 1e-7), ("gamma:3", 2.0, 1e-10), ("kummer:2:-3.5", 0.8, 1e-8)],
)
def test_crosscheck_laplace(spec, lam, tol):
    assert vf.crosscheck_laplace(make_family(spec), lam) <= tol


def test_lemma5_values():
    assert vf.lemma5_v0(1.0, 1.0) == 0.0
    assert vf.lemma5_v0(0.5, 1.0) == pytest.approx(math.log(2.0), rel=1e-15)
    # mpmath: tangency of cosh(2x+v) and 0.5 cosh x
    x, v = mpmath.findroot(
        lambda x, v: [mpmath.cosh(2 * x + v) - 0.5 * mpmath.cosh(x), 2 * mpmath.sinh(2 * x + v) - 0.5 * mpmath.sinh(x)],
        (-1.0, 2.4),
    )
    assert vf.lemma5_v0(0.5, 2.0) == pytest.approx(float(v), rel=1e-12)
    assert float(v) == pytest.approx(2.4060591253, abs=1e-9)
    with pytest.raises(DomainError):
        vf.lemma5_v0(1.5, 2.0)
    with pytest.raises(DomainError):
        vf.lemma5_v0(0.5, 0.5)


# at u = 1 + ulp the tangency point sits near |x| = 36 and v0 is only
# meaningful to eps * e^36; keep u a little away from 1
@settings(max_examples=10, deadline=None)
@given(st.floats(0.01, 1.0), st.floats(1.0 + 1e-12, 5.0))
def test_lemma5_tangency(a, u):
    assert -1e-9 <= vf.lemma5_residual(a, u) <= 1e-6


@pytest.mark.parametrize("d", [0.0, 0.2, -0.2, 0.5, -0.5])
def test_lemma7_against_bruteforce(d):
    assert mx.lemma7_kmax(d) == pytest.approx(vf.lemma7_kmax_bruteforce(d), abs=1e-6)


def test_lemma7_kmax_zero():
    assert mx.lemma7_kmax(0.0) == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert mx.lemma7_u(0.0) == 0.0


def test_lemma6():
    assert vf.lemma6_min_residual() >= 0.0


def test_gamma_threshold_published_and_corrected():
    pt = vf.prop3_published_threshold()
    assert pt["d0"] == math.log(2) - 2
    assert pt["factor"] == pytest.approx(math.e / math.sqrt(2), rel=1e-15)
    assert pt["p_threshold"] == pytest.approx(0.67543, abs=1e-5)
    assert vf.gamma_d0_published(2.0) == pytest.approx(-0.7755, abs=1e-4)
    p = vf.prop3_threshold(2.0, 2.0)
    assert p == pytest.approx(0.5795, abs=1e-4)
    # at the threshold the plan is exactly on the boundary
    pl = mx.plan_from_weights(make_family("gamma:2"), 1.0, 2.0, p)
    assert mx.plan_offsets(pl)[1] == pytest.approx(mx.gamma_d0(2.0), abs=1e-12)


def test_ressel_sandwich():
    xs = vf.linspace(0.05, 50.0, 200)
    for a in (1.0, 1.5, 1.77):
        assert vf.ressel_sandwich(a, xs, published=True).max_violation <= 1e-9
    rep = vf.ressel_sandwich(1.0, xs)
    assert rep.min_b2 < 0 and rep.lower_violation > 0


def test_ressel_b2_is_second_derivative():
    fd = make_family("ressel:1.5")
    for x in (0.3, 2.0, 15.0):
        ref = mpmath.diff(
            lambda t: -mpmath.log(1.5 * t ** (t + 0.5) * mpmath.exp(-t) / mpmath.gamma(t + 2.5)), x, 2
        )
        assert fd.b_second(x) == pytest.approx(float(ref), rel=1e-9)


def test_sign_scans():
    rep = vf.sign_scan_b2(make_family("ig:1"), 0.01, 5.0)
    assert [s for _, s in rep.sign_changes] == ["+-"]
    assert rep.sign_changes[0][0] == pytest.approx(2 / 3, abs=1e-8)
    assert vf.sign_scan_b2(make_family("hc:0.5"), 0.6455, 1.4434).min_value < 0
    assert vf.sign_scan_b2(make_family("ressel:2"), 0.01, 50.0).min_value < 0
    assert vf.sign_scan_b2(make_family("kummer:2:-3"), 0.001, 50.0).all_positive
    assert vf.sign_scan_b2(make_family("kummer:1.5:-2.2"), 0.001, 50.0).all_positive
    flat = vf.sign_scan_b2(make_family("kummer:1:-1"), 0.001, 50.0)
    assert not flat.all_positive and abs(flat.min_value) < 1e-12
    assert vf.sign_scan_b2(make_family("kummer:0.5:-2"), 0.001, 50.0).sign_changes[0][1] == "-+"
    assert vf.sign_scan_b2(make_family("kummer:2:-0.5"), 0.001, 50.0).sign_changes[0][1] == "+-"
    with pytest.raises(DomainError):
        vf.sign_scan_b2(make_family("gamma:2"), -1.0, 1.0)


@pytest.mark.parametrize("a, b, lam", [(1.5, 0.7, 1.0), (2.0, -0.5, 0.5), (0.5, 0.5, 2.0)])
def test_dyson(a, b, lam):
    assert vf.dyson_residual(a, b, lam) <= 1e-8


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.5, 4.0, exclude_min=True), st.floats(0.05, 5.0))
def test_dyson_random(a, b, lam):
    if abs(b - round(b)) < 1e-3:
        b += 0.01
    assert vf.dyson_residual(a, b, lam) <= 1e-8


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_kummer_closed_form(lam):
    assert vf.kummer_closed_residual(lam) <= 1e-10


@pytest.mark.parametrize("suite", ["family", "lemmas", "errata"])
def test_run_suite(suite):
    checks = vf.run_suite(suite)
    assert checks and all(c["passed"] for c in checks), [c for c in checks if not c["passed"]]
    assert {"name", "passed", "value", "detail"} <= set(checks[0])


def test_run_suite_unknown():
    with pytest.raises(DomainError):
        vf.run_suite("nope")
