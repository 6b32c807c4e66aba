"""Two-point mixtures of NEF members and the sufficient condition
``c T(x) <= cosh(c x + d)`` for an increasing hazard rate.

A plan mixes the members at ``lam1 < lam2`` with weights ``p, 1-p``. Writing
``p1 = p/L(lam1)`` and ``p2 = (1-p)/L(lam2)``, the mixture density is
``s(x) R(x)`` with ``R(x) = p1 e^(-lam1 x) + p2 e^(-lam2 x)``, and the plan is
parametrized by ``c = (lam2 - lam1)/2`` and ``d = log sqrt(p1/p2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import families as fam
from .errors import DomainError
from .families import FamilyDescriptor
from .numerics import DEFAULT_TOL, ToleranceConfig, find_root_monotone, integrate_adaptive, minimize_unimodal

# log of the smallest positive normal double
LOG_TINY = math.log(2.2250738585072014e-308)
HC2_D0 = math.sqrt(2.0) - math.log(1.0 + math.sqrt(2.0))

ERRATUM_1 = "ERRATUM 1: Lemma 7 k-bound"
ERRATUM_2 = "ERRATUM 2: Prop. 9 constant"
ERRATUM_3 = "ERRATUM 3: Prop. 12 inequality direction"
ERRATUM_4 = "ERRATUM 4: Ressel b'' formula"
ERRATUM_5 = "ERRATUM 5: Gamma d0 formula"


@dataclass(frozen=True)
class MixturePlan:
    family: FamilyDescriptor
    lambda1: float
    lambda2: float
    p: float
    p1: float
    p2: float
    c: float
    d: float

    @property
    def lambda_mid(self) -> float:
        return 0.5 * (self.lambda1 + self.lambda2)

    def to_dict(self) -> dict:
        return {
            "family": str(self.family.kind),
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "lambda_mid": self.lambda_mid,
            "p": self.p,
            "p1": self.p1,
            "p2": self.p2,
            "c": self.c,
            "d": self.d,
        }


@dataclass
class FeasibilityReport:
    method: str
    verdict: str
    min_slack: float
    witness_x: float | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "verdict": self.verdict,
            "min_slack": self.min_slack,
            "witness_x": self.witness_x,
            "notes": list(self.notes),
        }


@dataclass
class HazardReport:
    xs: list[float]
    hazard: list[float]
    monotone: bool
    max_drop: float
    drop_location: float | None
    # min of (log f)' + h over the grid; h' has the sign of this functional
    min_functional: float = math.nan
    functional_location: float | None = None
    density: list[float] = field(default_factory=list)
    survival: list[float] = field(default_factory=list)


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    m = max(a, b)
    return m + math.log1p(math.exp(-abs(a - b)))


def build_plan(fd: FamilyDescriptor, lambda_mid: float, c: float, d: float) -> MixturePlan:
    """Plan with endpoints ``lambda_mid -/+ c`` whose offset is ``d``.

    The weight solving ``d = log sqrt(p1/p2)`` is
    ``p = e^d L(lam1) / (e^d L(lam1) + e^-d L(lam2))``.
    """
    if not (c > 0 and math.isfinite(c)):
        raise DomainError("c must be positive and finite")
    if not (math.isfinite(d) and math.isfinite(lambda_mid)):
        raise DomainError("d and lambda_mid must be finite")
    lam1, lam2 = lambda_mid - c, lambda_mid + c
    if not (fam.in_lambda_domain(fd, lam1) and fam.in_lambda_domain(fd, lam2)):
        raise DomainError("endpoints outside natural domain")
    k1, k2 = fam.log_laplace(fd, lam1), fam.log_laplace(fd, lam2)
    # log(p/(1-p)) = 2d + k1 - k2
    z = 2.0 * d + k1 - k2
    log_p = -_logaddexp(0.0, -z)
    log_q = -_logaddexp(0.0, z)
    p = math.exp(log_p)
    if not 0.0 < p < 1.0:
        raise DomainError("mixing weight degenerates to 0 or 1")
    return MixturePlan(fd, lam1, lam2, p, math.exp(log_p - k1), math.exp(log_q - k2), c, d)


def plan_from_weights(fd: FamilyDescriptor, lambda1: float, lambda2: float, p: float) -> MixturePlan:
    """Plan from explicit endpoints and first-component weight ``p``."""
    if not lambda1 < lambda2:
        raise DomainError("need lambda1 < lambda2")
    if not 0.0 < p < 1.0:
        raise DomainError("p must lie in (0, 1)")
    if not (fam.in_lambda_domain(fd, lambda1) and fam.in_lambda_domain(fd, lambda2)):
        raise DomainError("endpoints outside natural domain")
    k1, k2 = fam.log_laplace(fd, lambda1), fam.log_laplace(fd, lambda2)
    log_p1 = math.log(p) - k1
    log_p2 = math.log1p(-p) - k2
    return MixturePlan(
        fd, lambda1, lambda2, p, math.exp(log_p1), math.exp(log_p2),
        0.5 * (lambda2 - lambda1), 0.5 * (log_p1 - log_p2),
    )


def plan_offsets(plan: MixturePlan) -> tuple[float, float]:
    """Recover ``(c, d)`` from the endpoints and ``p1, p2``."""
    return 0.5 * (plan.lambda2 - plan.lambda1), 0.5 * math.log(plan.p1 / plan.p2)


# --- density and hazard ---------------------------------------------------


def _log_r(plan: MixturePlan, x: float) -> float:
    return _logaddexp(math.log(plan.p1) - plan.lambda1 * x, math.log(plan.p2) - plan.lambda2 * x)


def log_mixture_density(plan: MixturePlan, x: float) -> float:
    fd = plan.family
    a = math.log(plan.p) + fam.log_nef_density(fd, plan.lambda1, x)
    b = math.log1p(-plan.p) + fam.log_nef_density(fd, plan.lambda2, x)
    return _logaddexp(a, b)


def mixture_density(plan: MixturePlan, x: float) -> float:
    """``p f(lam1, x) + (1-p) f(lam2, x)``."""
    return math.exp(log_mixture_density(plan, x))


def mixture_density_sr(plan: MixturePlan, x: float) -> float:
    """The same density computed as ``s(x) R(x)``."""
    return math.exp(plan.family.log_s(x) + _log_r(plan, x))


def dlog_density(plan: MixturePlan, x: float) -> float:
    """``(log f)'(x) = -b'(x) - (lam1 w1 + lam2 w2)/(w1 + w2)``, ``w_k = p_k e^(-lam_k x)``."""
    fd = plan.family
    # weight of the second component, computed stably
    z = (math.log(plan.p2) - plan.lambda2 * x) - (math.log(plan.p1) - plan.lambda1 * x)
    w2 = 1.0 / (1.0 + math.exp(-z)) if z > -700 else 0.0
    lam_bar = plan.lambda1 + (plan.lambda2 - plan.lambda1) * w2
    return -fd.b_prime(x) - lam_bar


def _closed_log_survival(plan: MixturePlan, x: float) -> float | None:
    fd = plan.family
    s1 = fd.member_log_survival(plan.lambda1, x)
    if s1 is None:
        return None
    s2 = fd.member_log_survival(plan.lambda2, x)
    if s1 == -math.inf or s2 == -math.inf:
        return None
    return _logaddexp(math.log(plan.p) + s1, math.log1p(-plan.p) + s2)


def _tail_cfg(cfg: ToleranceConfig) -> ToleranceConfig:
    # survival values can be far below any absolute floor; control relative error only
    return ToleranceConfig(cfg.rel_tol, 1e-300, cfg.max_subdivisions, cfg.max_iterations)


def _scaled_tail(plan: MixturePlan, x: float, cfg: ToleranceConfig) -> float:
    """``S(x)/f(x) = int_x^inf f(t)/f(x) dt``."""
    lf0 = log_mixture_density(plan, x)

    def ratio(t):
        if t == x:
            return 1.0
        v = log_mixture_density(plan, t) - lf0
        return math.exp(v) if v > -745.0 else 0.0

    return integrate_adaptive(ratio, x, math.inf, _tail_cfg(cfg)).value


def log_survival(plan: MixturePlan, x: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """``log S(x)`` with ``S(x) = p S1(x) + (1-p) S2(x)``."""
    plan.family._check_x(x)
    closed = _closed_log_survival(plan, x)
    if closed is not None:
        return closed
    return log_mixture_density(plan, x) + math.log(_scaled_tail(plan, x, cfg))


def survival(plan: MixturePlan, x: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    return math.exp(log_survival(plan, x, cfg))


def hazard(plan: MixturePlan, x: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """``h(x) = f(x)/S(x)``.

    Raises:
        DomainError: ``S(x)`` underflows double precision.
    """
    ls = log_survival(plan, x, cfg)
    if ls < LOG_TINY:
        raise DomainError(f"survival underflow beyond x={x!r}")
    return math.exp(log_mixture_density(plan, x) - ls)


def survival_grid(plan: MixturePlan, xs: list[float], cfg: ToleranceConfig = DEFAULT_TOL) -> list[float]:
    """``log S`` at ascending points ``xs``.

    Without closed forms, panel integrals between consecutive points are
    accumulated from the right, which keeps every value a sum of positives.
    """
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("grid must be strictly increasing")
    for x in (xs[0], xs[-1]):
        plan.family._check_x(x)
    closed = [_closed_log_survival(plan, x) for x in xs]
    if all(v is not None for v in closed):
        return closed
    tcfg = _tail_cfg(cfg)
    n = len(xs)
    out = [0.0] * n
    log_s = log_mixture_density(plan, xs[-1]) + math.log(_scaled_tail(plan, xs[-1], cfg))
    out[-1] = log_s
    for i in range(n - 2, -1, -1):
        a, b = xs[i], xs[i + 1]
        # scale the panel by its larger endpoint density
        ref = max(log_mixture_density(plan, a), log_mixture_density(plan, b))

        def g(t, ref=ref):
            v = log_mixture_density(plan, t) - ref
            return math.exp(v) if v > -745.0 else 0.0

        panel = integrate_adaptive(g, a, b, tcfg).value
        log_s = _logaddexp(log_s, ref + math.log(panel)) if panel > 0 else log_s
        out[i] = log_s
    return out


# --- feasibility ----------------------------------------------------------


def _slack(fd, c, d, x):
    """``cosh(cx+d) - c T(x)``, or None where ``b'' <= 0``."""
    b2 = fd.b_second(x)
    if not b2 > 0:
        return None
    return math.cosh(c * x + d) - c / math.sqrt(b2)


def _first_negative_b2(fd: FamilyDescriptor, lo: float, hi: float, n: int = 4001) -> float | None:
    if fd.two_sided:
        pts = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    else:
        lo = max(lo, 1e-6)
        r = math.log(hi / lo)
        pts = [lo * math.exp(r * i / (n - 1)) for i in range(n)]
    for x in pts:
        if not fd.b_second(x) > 0:
            return x
    return None


def lemma7_u(d: float) -> float:
    """Root of ``sinh 2u = 2(u - d)``; unique because the left side minus the right is increasing."""
    w = abs(d) + 1.0
    return find_root_monotone(
        lambda u: math.sinh(2.0 * u) - 2.0 * (u - d), -w, w,
        fprime=lambda u: 2.0 * math.cosh(2.0 * u) - 2.0,
    )


def lemma7_kmax(d: float) -> float:
    """Largest ``k`` with ``3k^2 + (u - d)^2 <= cosh^2 u`` for all real ``u``.

    Equals ``sqrt((2 - cosh^2 u_d) cosh^2 u_d / 3)`` at the critical point
    ``u_d``; at ``d = 0`` this is ``1/sqrt(3)``.

    Raises:
        DomainError: ``|d|`` exceeds ``sqrt(2) - log(1 + sqrt(2))``.
    """
    if not abs(d) <= HC2_D0:
        raise DomainError("no feasible k")
    ch2 = math.cosh(lemma7_u(d)) ** 2
    return math.sqrt(max(0.0, (2.0 - ch2) * ch2) / 3.0)


def gamma_d0(alpha: float) -> float:
    """Tangency offset for Gamma(alpha), alpha > 1: ``asinh(1/sqrt(alpha-1)) - sqrt(alpha)``."""
    if not alpha > 1:
        raise DomainError("need alpha > 1")
    return math.asinh(1.0 / math.sqrt(alpha - 1.0)) - math.sqrt(alpha)


def _analytic_normal(fd, c, d):
    cs = c * fd.sigma
    verdict = "feasible" if cs <= 1.0 else "infeasible"
    return FeasibilityReport("analytic", verdict, 1.0 - cs, -d / c, ["feasible iff c*sigma <= 1"])


def _analytic_gamma(fd, c, d):
    a = fd.alpha
    if a <= 1:
        note = "Gamma(1): b'' = 0, T infinite" if a == 1 else "b'' < 0: density log-convex"
        return FeasibilityReport("analytic", "infeasible", -math.inf, 1.0, [note])
    d0 = gamma_d0(a)
    t0 = math.asinh(1.0 / math.sqrt(a - 1.0))
    notes = [f"feasible iff d >= d0 = {d0!r} (independent of c)", ERRATUM_5]
    verdict = "feasible" if d >= d0 else "infeasible"
    if d < t0:
        return FeasibilityReport("analytic", verdict, (d - d0) / math.sqrt(a - 1.0), (t0 - d) / c, notes)
    return FeasibilityReport("analytic", verdict, math.cosh(d), 0.0, notes)


def _analytic_hc1(fd, c, d):
    notes = ["T(x) = (2/pi) cosh(pi x/2); an admissible plan needs c < pi/2"]
    if c < math.pi / 2:
        # (c/pi) e^(pi x/2) > e^(cx+d) >= cosh(cx+d) past this point
        x = max((d + math.log(math.pi / c)) / (math.pi / 2 - c), -d / c, 0.0) + 1.0
        notes.append("tail witness: T grows like e^(pi|x|/2), faster than cosh(cx+d)")
        return FeasibilityReport("analytic", "infeasible", _slack(fd, c, d, x), x, notes)
    if c == math.pi / 2 and d == 0.0:
        return FeasibilityReport("analytic", "feasible", 0.0, 0.0, notes)
    x = -d / c
    return FeasibilityReport("analytic", "infeasible", 1.0 - 2.0 * c / math.pi, x, notes)


def _hc2_envelope_slack(c, d):
    # min over u of cosh u - sqrt(3k^2 + (u-d)^2), k = 2c/pi; convex-minus-convex, so scan then refine
    k2 = 3.0 * (2.0 * c / math.pi) ** 2
    g = lambda u: math.cosh(u) - math.sqrt(k2 + (u - d) ** 2)
    w = abs(d) + 4.0
    n = 801
    us = [-w + 2.0 * w * i / (n - 1) for i in range(n)]
    j = min(range(n), key=lambda i: g(us[i]))
    lo, hi = us[max(j - 1, 0)], us[min(j + 1, n - 1)]
    u, v = minimize_unimodal(g, lo, hi)
    return v, (u - d) / c


def _analytic_hc2(fd, c, d):
    k = 2.0 * c / math.pi
    notes = [
        ERRATUM_1,
        "T(x) <= (2/pi) sqrt(3 + (pi x/2)^2), equality at 0; condition 3k^2 + (u-d)^2 <= cosh^2 u",
    ]
    t0 = 2.0 * math.sqrt(3.0) / math.pi
    if c * t0 > math.cosh(d):
        notes.append("violated at x = 0: c T(0) > cosh d")
        return FeasibilityReport("analytic", "infeasible", math.cosh(d) - c * t0, 0.0, notes)
    if abs(d) <= HC2_D0 and k <= lemma7_kmax(d):
        slack, x = _hc2_envelope_slack(c, d)
        notes.append(f"k = {k!r} <= k_max(d) = {lemma7_kmax(d)!r}; min_slack is the envelope bound")
        return FeasibilityReport("analytic", "feasible", max(slack, 0.0), x, notes)
    notes.append("envelope condition fails; exact region not decided analytically")
    return FeasibilityReport("analytic", "unknown", math.nan, None, notes)


def _analytic_hc_other(fd, c, d):
    if fd.alpha < 1:
        x = _first_negative_b2(fd, 0.01, 1e3)
        if x is not None:
            return FeasibilityReport(
                "analytic", "infeasible", -math.inf, x, [f"log-concavity fails at x={x!r}"]
            )
    return FeasibilityReport("analytic", "unknown", math.nan, None, ["no analytic criterion for this alpha"])


def ressel_prop9_phi(c: float, d: float) -> tuple[float, float]:
    """``(x0, phi(max(x0, 0)))`` for ``phi(x) = cosh^2(cx+d)/c^2 - x - 2``."""
    x0 = (0.5 * math.asinh(c) - d) / c
    xm = max(x0, 0.0)
    return x0, math.cosh(c * xm + d) ** 2 / (c * c) - xm - 2.0


def _analytic_ressel(fd, c, d):
    x0, phi = ressel_prop9_phi(c, d)
    notes = [
        ERRATUM_2,
        f"published criterion (constant -2): x0 = {x0!r}, phi = {phi!r}, "
        f"would give {'feasible' if phi >= 0 else 'infeasible'}",
        ERRATUM_4,
    ]
    x = _first_negative_b2(fd, 1e-3, 1e4)
    if x is not None:
        notes.append(f"log-concavity fails at x={x!r}")
        return FeasibilityReport("analytic", "infeasible", -math.inf, x, notes)
    return FeasibilityReport("analytic", "unknown", math.nan, None, notes)


def _analytic_kummer(fd, c, d):
    A, B = fd.A, fd.B
    if A == 0 and B > 0:
        # T(x) = (1+x)/sqrt(B); slack minimized at sinh(cx0+d) = 1/sqrt(B)
        x0 = (math.asinh(1.0 / math.sqrt(B)) - d) / c
        xm = max(x0, 0.0)
        phi = math.sqrt(B + 1.0) / c - 1.0 - xm if x0 > 0 else None
        slack = math.cosh(c * xm + d) - c * (1.0 + xm) / math.sqrt(B)
        notes = [ERRATUM_3, f"x0 = {x0!r}"]
        if phi is not None:
            notes.append(f"phi(x0) = sqrt(B+1)/c - 1 - x0 = {phi!r}")
        verdict = "feasible" if slack >= 0 else "infeasible"
        return FeasibilityReport("analytic", verdict, slack, xm, notes)
    if not (A >= 0 and B >= 0 and A + B > 0):
        x = _first_negative_b2(fd, 1e-4, 1e4)
        if x is not None:
            return FeasibilityReport(
                "analytic", "infeasible", -math.inf, x, [f"log-concavity fails at x={x!r}"]
            )
    return FeasibilityReport("analytic", "unknown", math.nan, None, ["analytic criterion covers a = 1 only"])


def _analytic_ig(fd, c, d):
    x = 4.0 * fd.alpha**2 / 3.0
    return FeasibilityReport(
        "analytic", "infeasible", -math.inf, x,
        ["not applicable: b'' < 0 beyond 2 alpha^2/3", f"log-concavity fails at x={x!r}"],
    )


def feasibility_analytic(fd: FamilyDescriptor, c: float, d: float) -> FeasibilityReport:
    """Closed-form verdict on ``c T(x) <= cosh(cx+d)`` for all ``x`` in the support.

    Covered: Normal, Gamma, HC alpha in {1, 2}, Kummer with a = 1, and the
    cases where ``b''`` is negative somewhere. Anything else is "unknown".
    """
    if not (c > 0 and math.isfinite(c) and math.isfinite(d)):
        raise DomainError("need c > 0 and finite d")
    if isinstance(fd, fam.Normal):
        return _analytic_normal(fd, c, d)
    if isinstance(fd, fam.Gamma):
        return _analytic_gamma(fd, c, d)
    if isinstance(fd, fam.HyperbolicCosine):
        if fd.alpha == 1:
            return _analytic_hc1(fd, c, d)
        if fd.alpha == 2:
            return _analytic_hc2(fd, c, d)
        return _analytic_hc_other(fd, c, d)
    if isinstance(fd, fam.Ressel):
        return _analytic_ressel(fd, c, d)
    if isinstance(fd, fam.Kummer):
        return _analytic_kummer(fd, c, d)
    if isinstance(fd, fam.InverseGaussian):
        return _analytic_ig(fd, c, d)
    return FeasibilityReport("analytic", "unknown", math.nan, None, ["family not covered"])


def _tail_holds(fd, c, d, x, side):
    """Whether ``c T <= cosh(cx+d)`` is certified on the whole ray beyond ``x``.

    Uses the envelope: ``log(c t_bound)`` is below ``log cosh`` at ``x`` and
    grows no faster than ``log cosh`` does from ``x`` on.
    """
    ax = abs(x)
    tb = fd.t_bound(ax if fd.two_sided else x)
    if tb is None:
        return False
    # cosh argument measured outward along the ray
    y = side * (c * x + d)
    if y <= 0:
        return False
    if not math.log(c * tb) < fam._log_cosh(y):
        return False
    return fd.t_bound_slope(ax) <= c * math.tanh(y)


def _find_tail_window(fd, c, d, side, start):
    x = start
    for _ in range(60):
        if _tail_holds(fd, c, d, side * x, side):
            return side * x
        x *= 2.0
    return None


def _tail_witness(fd, c, d):
    """Search ``|x| <= 400`` for a violation when T outgrows cosh(cx+d)."""
    sides = (1.0, -1.0) if fd.two_sided else (1.0,)
    for side in sides:
        x = 1.0
        while x <= 400.0:
            s = _slack(fd, c, d, side * x)
            if s is None or s < 0:
                return side * x, s
            x *= 1.25
    return None, None


def _grid(lo, hi, n, extra=()):
    pts = {lo + (hi - lo) * i / (n - 1) for i in range(n)}
    if lo > 0:
        r = math.log(hi / lo)
        pts.update(lo * math.exp(r * i / (n - 1)) for i in range(n))
    pts.update(x for x in extra if lo <= x <= hi)
    return sorted(pts)


def feasibility_numeric(
    fd: FamilyDescriptor, c: float, d: float, cfg: ToleranceConfig = DEFAULT_TOL
) -> FeasibilityReport:
    """Grid verdict on ``c T(x) <= cosh(cx+d)`` with certified tails.

    The slack is scanned over a window and its minimum refined. Outside the
    window the envelope of ``T`` certifies the tails, or, when ``T`` grows
    exponentially faster than ``cosh(cx+d)``, an explicit violation is
    searched for. A point with ``b'' <= 0`` makes the verdict infeasible.
    """
    if not (c > 0 and math.isfinite(c) and math.isfinite(d)):
        raise DomainError("need c > 0 and finite d")
    notes: list[str] = []
    tail = fd.t_tail

    if tail.exp_rate > c:
        x, s = _tail_witness(fd, c, d)
        if x is not None:
            if s is None:
                notes.append(f"log-concavity fails at x={x!r}")
                return FeasibilityReport("numeric", "infeasible", -math.inf, x, notes)
            notes.append(f"tail witness: T grows at rate {tail.exp_rate!r} > c")
            return FeasibilityReport("numeric", "infeasible", s, x, notes)

    certified = tail.certified and tail.exp_rate <= c
    right = _find_tail_window(fd, c, d, 1.0, 1.0) if certified else None
    left = None
    if fd.two_sided and certified:
        left = _find_tail_window(fd, c, d, -1.0, 1.0)
    tails_ok = right is not None and (left is not None or not fd.two_sided)

    hi = max(right if right is not None else 50.0, 10.0)
    if fd.two_sided:
        lo = min(left if left is not None else -50.0, -10.0)
    else:
        lo = fd.support_left + 1e-6
    extra = list(fd.special_points) + [-d / c]
    xs = _grid(lo, hi, 4001, extra)

    best_x, best = None, math.inf
    for x in xs:
        s = _slack(fd, c, d, x)
        if s is None:
            notes.append(f"log-concavity fails at x={x!r}")
            return FeasibilityReport("numeric", "infeasible", -math.inf, x, notes)
        if s < best:
            best, best_x = s, x
    i = xs.index(best_x)
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    try:
        xr, vr = minimize_unimodal(lambda t: _slack(fd, c, d, t), a, b, cfg)
        if vr < best:
            best_x, best = xr, vr
    except Exception:  # noqa: BLE001 - refinement is optional
        pass

    if not fd.two_sided:
        # (0, lo]: T <= t_bound(lo) and cosh(cx+d) >= its minimum over the interval
        tb = fd.t_bound(lo)
        if tb is None:
            tails_ok = False
        else:
            if 0.0 < -d / c <= lo:
                lo_cosh = 1.0
            else:
                lo_cosh = min(math.cosh(d), math.cosh(c * lo + d))
            if lo_cosh - c * tb < -cfg.abs_tol:
                tails_ok = False
        notes.append(f"left end certified on (0, {lo!r}] by the envelope" if tails_ok else "left end not certified")

    if best < -cfg.abs_tol:
        notes.append(f"grid violation at x={best_x!r}")
        return FeasibilityReport("numeric", "infeasible", best, best_x, notes)
    if not tails_ok:
        notes.append("tail not certified")
        return FeasibilityReport("numeric", "unknown", best, best_x, notes)
    notes.append(f"window [{lo!r}, {hi!r}], tails certified by envelope growth")
    return FeasibilityReport("numeric", "feasible", best, best_x, notes)
