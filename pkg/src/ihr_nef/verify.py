"""Independent checks: hazard monotonicity on grids, Laplace cross-checks,
lemma-level constants, the Ressel bounds, sign scans of ``b''`` and the 1F1
decomposition of the Kummer normalizer.

Where a published formula disagrees with a direct computation, the direct
computation wins; the published version is kept callable so the disagreement
can be reproduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import families as fam
from . import mixture as mx
from .errors import DomainError
from .families import FamilyDescriptor
from .mixture import HazardReport, MixturePlan, lemma7_kmax
from .numerics import DEFAULT_TOL, ToleranceConfig, minimize_unimodal

__all__ = [
    "SignScanReport",
    "SandwichReport",
    "check_hazard_monotone",
    "crosscheck_laplace",
    "dyson_residual",
    "kummer_closed_residual",
    "lemma5_v0",
    "lemma5_residual",
    "lemma6_min_residual",
    "lemma7_kmax",
    "lemma7_kmax_bruteforce",
    "prop3_published_threshold",
    "prop3_threshold",
    "gamma_d0_published",
    "ressel_sandwich",
    "sign_scan_b2",
    "run_suite",
]


def linspace(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        raise DomainError("need at least two points")
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


# --- hazard ---------------------------------------------------------------


def check_hazard_monotone(
    plan: MixturePlan,
    x_lo: float,
    x_hi: float,
    n: int = 2001,
    cfg: ToleranceConfig = DEFAULT_TOL,
) -> HazardReport:
    """Hazard of ``plan`` on an ``n``-point grid and two monotonicity tests.

    The drop test bounds every decrease ``h[i] - h[i+1]`` by
    ``1e-8 * max(h)``. The functional test uses ``h' = h ((log f)' + h)``
    with ``(log f)'`` taken analytically, so it needs no differencing. Both
    must pass for ``monotone``.
    """
    if n < 100:
        raise DomainError("need n >= 100 grid points")
    if not x_lo < x_hi:
        raise DomainError("need x_lo < x_hi")
    xs = linspace(x_lo, x_hi, n)
    log_surv = mx.survival_grid(plan, xs, cfg)
    log_dens = [mx.log_mixture_density(plan, x) for x in xs]
    for x, ls in zip(xs, log_surv):
        if ls < mx.LOG_TINY:
            raise DomainError(f"survival underflow beyond x={x!r}")
    h = [math.exp(lf - ls) for lf, ls in zip(log_dens, log_surv)]
    tol = 1e-8 * max(h)

    max_drop, drop_at = 0.0, None
    for i in range(n - 1):
        drop = h[i] - h[i + 1]
        if drop > max_drop:
            max_drop, drop_at = drop, xs[i]

    fmin, f_at = math.inf, None
    for x, hv in zip(xs, h):
        v = mx.dlog_density(plan, x) + hv
        if v < fmin:
            fmin, f_at = v, x

    return HazardReport(
        xs=xs,
        hazard=h,
        monotone=max_drop <= tol and fmin >= -tol,
        max_drop=max_drop,
        drop_location=drop_at,
        min_functional=fmin,
        functional_location=f_at,
        density=[math.exp(v) for v in log_dens],
        survival=[math.exp(v) for v in log_surv],
    )


def crosscheck_laplace(fd: FamilyDescriptor, lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Relative gap between quadrature of ``e^(-lam x) s(x)`` and ``laplace``."""
    closed = fam.laplace(fd, lam)
    quad = fam.laplace_quadrature(fd, lam, cfg)
    return abs(quad - closed) / closed


# --- lemmas ---------------------------------------------------------------


def lemma5_v0(a: float, u: float) -> float:
    """Smallest ``v`` with ``a cosh x <= cosh(u x + v)`` for all ``x`` (``v >= 0`` branch).

    ``v0 = u log(A/a + u B/a) - log(A + B)`` with
    ``A = sqrt((u^2 - a^2)/(u^2 - 1))`` and ``B = sqrt((1 - a^2)/(u^2 - 1))``;
    for ``u = 1`` it is ``-log a``.
    """
    if not (0.0 < a <= 1.0) or not (u >= 1.0) or not math.isfinite(u):
        raise DomainError("need 0 < a <= 1 <= u")
    if u == 1.0:
        return -math.log(a)
    A = math.sqrt((u * u - a * a) / (u * u - 1.0))
    B = math.sqrt((1.0 - a * a) / (u * u - 1.0))
    return u * math.log(A / a + u * B / a) - math.log(A + B)


def _scan_min(g, lo, hi, n=4001):
    xs = linspace(lo, hi, n)
    vals = [g(x) for x in xs]
    j = min(range(n), key=vals.__getitem__)
    a, b = xs[max(j - 1, 0)], xs[min(j + 1, n - 1)]
    x, v = minimize_unimodal(g, a, b)
    return (x, v) if v < vals[j] else (xs[j], vals[j])


def lemma5_residual(a: float, u: float) -> float:
    """``min_x [cosh(u x + v0) - a cosh x]``; zero at tangency.

    As ``u -> 1`` the tangency point runs off to ``-inf``, hence the wide span.
    """
    v0 = lemma5_v0(a, u)
    span = 40.0 + abs(v0)
    la = math.log(a)
    # pair the growing exponentials on each side so their cancellation is exact:
    # cosh(ux+v0) - a cosh x = a/2 [e^x expm1((u-1)x+v0-log a) + e^-x expm1(-(u-1)x-v0-log a)]
    g = lambda x: 0.5 * a * (
        math.exp(x) * math.expm1((u - 1.0) * x + v0 - la)
        + math.exp(-x) * math.expm1(-(u - 1.0) * x - v0 - la)
    )
    return _scan_min(g, -span, span)[1]


def lemma7_kmax_bruteforce(d: float, lo: float = -6.0, hi: float = 6.0, n: int = 12001) -> float:
    """``max{k : 3k^2 + (u-d)^2 <= cosh^2 u}`` over a grid of ``u``, then refined."""
    _, m = _scan_min(lambda u: math.cosh(u) ** 2 - (u - d) ** 2, lo, hi, n)
    return math.sqrt(max(m, 0.0) / 3.0)


def lemma6_min_residual(lo: float = -20.0, hi: float = 20.0, n: int = 4001) -> float:
    """``min (sinh^2 t - t^2 - t^4/3)`` on a grid (nonnegative by the power series)."""
    return min(math.sinh(t) ** 2 - t * t - t**4 / 3.0 for t in linspace(lo, hi, n))


# --- Gamma example --------------------------------------------------------


def gamma_d0_published(alpha: float) -> float:
    """The printed closed form ``log((1+sqrt a)/sqrt(a-1)) - 2a/(1+sqrt a)``."""
    if not alpha > 1:
        raise DomainError("need alpha > 1")
    r = math.sqrt(alpha)
    return math.log((1.0 + r) / math.sqrt(alpha - 1.0)) - 2.0 * alpha / (1.0 + r)


def prop3_published_threshold(ratio: float = 2.0, alpha: float = 2.0) -> dict:
    """The worked Gamma example as printed: ``d0 = log 2 - 2``, factor
    ``e^(-d0/2)``, and the least ``p`` with ``ratio^alpha <= p/(1-p) * factor``."""
    d0 = math.log(2.0) - 2.0
    factor = math.exp(-d0 / 2.0)
    odds = ratio**alpha / factor
    return {"d0": d0, "factor": factor, "p_threshold": odds / (1.0 + odds)}


def prop3_threshold(ratio: float, alpha: float) -> float:
    """Least ``p`` making the plan ``lam2/lam1 = ratio`` feasible, from the
    tangency offset: ``p/(1-p) >= ratio^alpha e^(2 d0)``."""
    odds = ratio**alpha * math.exp(2.0 * mx.gamma_d0(alpha))
    return odds / (1.0 + odds)


# --- Ressel ---------------------------------------------------------------


def ressel_bounds(alpha: float, x: float) -> tuple[float, float]:
    """The rational lower and upper bounds ``(h(x), g(x))`` claimed for ``b''``."""
    a = alpha
    g = (a - 1.0) / (x * x) + ((2.0 - a) * x - a * a + a) / (x * (x + a))
    h = ((a * a - 1.0) + (a - a * a) * x + (2.0 - a) * x * x) / (x * x * (x + a + 1.0))
    return h, g


@dataclass
class SandwichReport:
    alpha: float
    published: bool
    lower_violation: float
    upper_violation: float
    min_b2: float
    argmin_b2: float

    @property
    def max_violation(self) -> float:
        return max(self.lower_violation, self.upper_violation)


def ressel_sandwich(alpha: float, xs: list[float], published: bool = False) -> SandwichReport:
    """Largest violations of ``h <= b'' <= g`` over ``xs``.

    ``published=True`` tests the printed closed form of ``b''`` instead of the
    second derivative of ``-log s``.
    """
    fd = fam.Ressel(alpha)
    lo_v = up_v = 0.0
    min_b2, arg = math.inf, math.nan
    for x in xs:
        b2 = fam.ressel_b2_published(alpha, x) if published else fd.b_second(x)
        h, g = ressel_bounds(alpha, x)
        lo_v = max(lo_v, h - b2)
        up_v = max(up_v, b2 - g)
        if b2 < min_b2:
            min_b2, arg = b2, x
    return SandwichReport(alpha, published, lo_v, up_v, min_b2, arg)


# --- sign scans -----------------------------------------------------------


@dataclass
class SignScanReport:
    interval: tuple[float, float]
    sign_changes: list[tuple[float, str]] = field(default_factory=list)
    all_positive: bool = False
    min_value: float = math.inf
    argmin: float = math.nan


def _bisect_sign(f, a, b, fa, width=1e-10):
    while b - a > width * max(1.0, abs(a)):
        m = 0.5 * (a + b)
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def sign_scan_b2(fd: FamilyDescriptor, lo: float, hi: float, n: int = 2001) -> SignScanReport:
    """Sign changes of ``b''`` on an ``n``-point grid over ``[lo, hi]``, each
    refined by bisection."""
    if not (fd.in_support(lo) and fd.in_support(hi) and lo < hi):
        raise DomainError("scan interval must lie inside the support")
    xs = linspace(lo, hi, n)
    vals = [fd.b_second(x) for x in xs]
    rep = SignScanReport((lo, hi))
    j = min(range(n), key=vals.__getitem__)
    rep.min_value, rep.argmin = vals[j], xs[j]
    for i in range(n - 1):
        a, b = vals[i], vals[i + 1]
        if (a > 0) != (b > 0):
            x = _bisect_sign(fd.b_second, xs[i], xs[i + 1], a)
            rep.sign_changes.append((x, "+-" if a > 0 else "-+"))
    rep.all_positive = not rep.sign_changes and rep.min_value > 0
    return rep


# --- Kummer ---------------------------------------------------------------


def dyson_residual(a: float, b: float, lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Relative gap between quadrature of ``C(a, b, lam)`` and its 1F1 decomposition."""
    quad = fam.kummer_c_quadrature(a, b, lam, cfg)
    return abs(quad - fam.dyson_rhs(a, b, lam)) / abs(quad)


def kummer_closed_residual(lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Relative gap between quadrature of ``C(1, -2, lam)`` and ``(1+lam)/lam^2``."""
    closed = (1.0 + lam) / lam**2
    return abs(fam.kummer_c_quadrature(1.0, -2.0, lam, cfg) - closed) / closed


# --- suites for the command line -----------------------------------------


def _check(name, passed, value=None, detail=""):
    return {"name": name, "passed": bool(passed), "value": value, "detail": detail}


def _suite_family(cfg):
    out = []
    samples = {
        "normal:1": [-1.0, 0.0, 1.0],
        "gamma:3": [0.5, 2.0],
        "ig:1": [0.5, 2.0],
        "hc:1": [-0.7, 0.3],
        "hc:2": [0.0, 0.7],
        "ressel:1": [0.5, 1.0, 2.0],
        "kummer:1:-2": [0.5, 1.0, 2.0],
        "kummer:1.5:0.7": [1.0],
    }
    for spec, lams in samples.items():
        fd = fam.make_family(spec)
        for lam in lams:
            err = crosscheck_laplace(fd, lam, cfg)
            out.append(_check(f"laplace quadrature {spec} lambda={lam}", err <= 1e-7, err))
    ig = sign_scan_b2(fam.make_family("ig:1"), 0.01, 5.0, 2001)
    x = ig.sign_changes[0][0] if len(ig.sign_changes) == 1 else math.nan
    out.append(_check("ig:1 single sign change of b'' at 2/3", abs(x - 2.0 / 3.0) <= 1e-6, x))
    hc = fam.make_family("hc:0.5")
    mid = 0.5 * (0.6455 + 1.4434)
    out.append(_check("hc:0.5 b'' < 0 at interval midpoint", hc.b_second(mid) < 0, hc.b_second(mid)))
    for spec, lo, hi, want in [
        ("kummer:2:-3", 0.001, 50.0, True),
        ("kummer:0.5:-2", 0.001, 50.0, False),
        ("kummer:2:-0.5", 0.001, 50.0, False),
    ]:
        rep = sign_scan_b2(fam.make_family(spec), lo, hi, 2001)
        out.append(_check(f"{spec} b'' positive iff a >= 1, b <= -1", rep.all_positive == want, rep.min_value))
    for a, b, lam in [(1.5, 0.7, 1.0), (2.0, -0.5, 0.5), (0.5, 0.5, 2.0)]:
        err = dyson_residual(a, b, lam, cfg)
        out.append(_check(f"1F1 decomposition ({a}, {b}, {lam})", err <= 1e-8, err))
    for lam in (0.5, 1.0, 2.0):
        err = kummer_closed_residual(lam, cfg)
        out.append(_check(f"C(1,-2,{lam}) closed form", err <= 1e-10, err))
    return out


def _suite_lemmas(cfg):
    out = []
    d0 = math.sqrt(2.0) - math.log(1.0 + math.sqrt(2.0))
    # the printed value 0.532... is a truncated expansion
    out.append(_check("HC2 offset bound d0", math.floor(d0 * 1e3) / 1e3 == 0.532, d0))
    for d in (0.0, 0.2, -0.2, 0.5, -0.5):
        k, kb = lemma7_kmax(d), lemma7_kmax_bruteforce(d)
        out.append(_check(f"k_max({d}) vs brute force", abs(k - kb) <= 1e-6, k))
    for a, u in [(1.0, 1.0), (0.5, 1.0), (0.5, 2.0), (0.3, 3.5), (0.9, 1.2)]:
        r = lemma5_residual(a, u)
        out.append(_check(f"lemma5 tangency a={a} u={u}", -1e-9 <= r <= 1e-6, r))
    r6 = lemma6_min_residual()
    out.append(_check("sinh^2 t - t^2 - t^4/3 >= 0", r6 >= 0.0, r6))
    fd = fam.make_family("hc:2")
    worst = max(
        fam.t_value(fd, x) - (2.0 / math.pi) * math.sqrt(3.0 + (math.pi * x / 2.0) ** 2)
        for x in linspace(-20.0, 20.0, 2001)
    )
    out.append(_check("HC2 envelope of T", worst <= 1e-12, worst))
    return out


def _suite_errata(cfg):
    out = []
    k0 = lemma7_kmax(0.0)
    out.append(_check("ERRATUM 1: k_max(0) = 1/sqrt(3)", abs(k0 - 1.0 / math.sqrt(3.0)) <= 1e-6, k0))
    w = math.sqrt(3.0 * 2.0 / 3.0)
    out.append(_check("ERRATUM 1: k = sqrt(2/3) violated at u = 0", w > math.cosh(0.0), w))
    x0, phi = mx.ressel_prop9_phi(0.5, 0.0)
    out.append(_check("ERRATUM 2: phi(x0) with constant -2 at c=0.5, d=0", phi > 0, phi, f"x0={x0!r}"))
    rep = mx.feasibility_analytic(fam.make_family("kummer:1:-2"), 0.5, 0.0)
    out.append(_check("ERRATUM 3: Kummer B=1, c=0.5 feasible", rep.verdict == "feasible", rep.min_slack))
    fd = fam.make_family("ressel:1")
    scan = sign_scan_b2(fd, 0.01, 50.0, 2001)
    out.append(_check("ERRATUM 4: Ressel(1) b'' < 0", scan.min_value < 0, scan.min_value))
    pub = ressel_sandwich(1.5, linspace(0.01, 50.0, 200), published=True)
    out.append(_check("ERRATUM 4: bounds hold for the printed b''", pub.max_violation <= 1e-9, pub.max_violation))
    pt = prop3_published_threshold(2.0, 2.0)
    out.append(_check("Gamma example as printed: p > 0.6754", abs(pt["p_threshold"] - 0.6754) <= 1e-3, pt["p_threshold"]))
    d0 = mx.gamma_d0(2.0)
    out.append(_check("ERRATUM 5: Gamma(2) d0 by tangency", abs(d0 - gamma_d0_published(2.0)) > 0.1, d0))
    return out


SUITES = {"family": _suite_family, "lemmas": _suite_lemmas, "errata": _suite_errata}


def run_suite(name: str = "all", cfg: ToleranceConfig = DEFAULT_TOL) -> list[dict]:
    """Run one named suite (or all) and return one dict per check."""
    if name == "all":
        return [c for fn in SUITES.values() for c in fn(cfg)]
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
