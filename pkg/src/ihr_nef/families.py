"""Natural exponential family generators.

Each family is a generating density ``s = exp(-b)`` on ``(support_left, inf)``
whose exponential tilts ``exp(-lam*x - k(lam)) s(x)`` form the family. The
descriptor exposes ``log s``, ``b'``, ``b''``, ``T = 1/sqrt(b'')`` and the
Laplace transform ``L(lam)``, together with an upper envelope of ``T`` used to
certify tails, when one is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import specfun
from .errors import DomainError
from .numerics import DEFAULT_TOL, ToleranceConfig, find_root_monotone, integrate_adaptive

HALF_PI = 0.5 * math.pi
LOG_2PI = math.log(2.0 * math.pi)
# Positive root of the quartic bounding Ressel log-concavity as published.
RESSEL_GLASER_UPPER = 1.77846


@dataclass(frozen=True)
class FamilyKind:
    """Family name plus parameters, e.g. ``FamilyKind("kummer", (1.0, -2.0))``."""

    name: str
    params: tuple[float, ...]

    def __str__(self):
        return ":".join([self.name, *(repr(float(p)) for p in self.params)])


@dataclass(frozen=True)
class TailGrowth:
    """Growth of ``T`` at infinity: ``T(x) ~ C e^{exp_rate |x|} |x|^poly_degree``.

    ``certified`` says whether the family carries an envelope of ``T`` that can
    back a tail certificate.
    """

    exp_rate: float
    poly_degree: float
    certified: bool = True


def _log_cosh(y: float) -> float:
    y = abs(y)
    return y + math.log1p(math.exp(-2.0 * y)) - math.log(2.0)


def parse_family(spec: str) -> FamilyKind:
    """Parse ``normal:<sigma>``, ``gamma:<alpha>``, ``ig:<alpha>``,
    ``hc:<alpha>``, ``ressel:<alpha>`` or ``kummer:<a>:<b>``."""
    parts = spec.strip().split(":")
    name = parts[0].lower()
    arity = {"normal": 1, "gamma": 1, "ig": 1, "hc": 1, "ressel": 1, "kummer": 2}
    if name not in arity:
        raise DomainError(f"unknown family {parts[0]!r}")
    if len(parts) - 1 != arity[name]:
        raise DomainError(f"family {name!r} takes {arity[name]} parameter(s)")
    try:
        params = tuple(float(p) for p in parts[1:])
    except ValueError:
        raise DomainError(f"bad parameter in family spec {spec!r}") from None
    if not all(math.isfinite(p) for p in params):
        raise DomainError("family parameters must be finite")
    return FamilyKind(name, params)


@dataclass(frozen=True)
class FamilyDescriptor:
    """Immutable description of one NEF generator.

    Subclasses implement the evaluators; the dataclass fields carry metadata.
    """

    kind: FamilyKind
    support_left: float
    lambda_domain: tuple[float, float]
    vf_text: str
    log_concavity_note: str
    t_tail: TailGrowth
    # Laplace transform is finite at the left end of lambda_domain.
    closed_left: bool = False
    # Points the feasibility grid must contain.
    special_points: tuple[float, ...] = field(default=())

    @property
    def two_sided(self) -> bool:
        return math.isinf(self.support_left)

    def in_support(self, x: float) -> bool:
        return x > self.support_left and math.isfinite(x)

    def _check_x(self, x):
        if not self.in_support(x):
            raise DomainError(f"x={x!r} outside support")

    def log_s(self, x: float) -> float:
        raise NotImplementedError

    def b_prime(self, x: float) -> float:
        raise NotImplementedError

    def b_second(self, x: float) -> float:
        raise NotImplementedError

    def _laplace(self, lam: float) -> float:
        raise NotImplementedError

    def t_bound(self, x: float) -> float | None:
        """Upper bound on ``T(x)``, non-decreasing in ``|x|`` (None if unknown)."""
        return None

    def t_bound_slope(self, x: float) -> float:
        """Upper bound on ``d/dt log t_bound(t)`` over ``t >= x`` (``x > 0``)."""
        raise NotImplementedError

    def member_log_survival(self, lam: float, x: float) -> float | None:
        """Closed-form ``log P(X > x)`` for the member with parameter ``lam``,
        or None when only quadrature is available."""
        return None


def _check_positive(**kw):
    for name, value in kw.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive")


class Normal(FamilyDescriptor):
    def __init__(self, sigma: float):
        _check_positive(sigma=sigma)
        super().__init__(
            kind=FamilyKind("normal", (sigma,)),
            support_left=-math.inf,
            lambda_domain=(-math.inf, math.inf),
            vf_text=f"(V, Omega) = ({sigma**2!r}, R)",
            log_concavity_note="log-concave for every sigma; T(x) = sigma",
            t_tail=TailGrowth(0.0, 0.0),
            special_points=(0.0,),
        )
        object.__setattr__(self, "sigma", sigma)

    def log_s(self, x):
        self._check_x(x)
        s = self.sigma
        return -0.5 * (x / s) ** 2 - math.log(s) - 0.5 * LOG_2PI

    def b_prime(self, x):
        return x / self.sigma**2

    def b_second(self, x):
        self._check_x(x)
        return 1.0 / self.sigma**2

    def _laplace(self, lam):
        return math.exp(0.5 * (self.sigma * lam) ** 2)

    def t_bound(self, x):
        return self.sigma

    def t_bound_slope(self, x):
        return 0.0

    def member_log_survival(self, lam, x):
        s = self.sigma
        z = (x + s * s * lam) / (s * math.sqrt(2.0))
        tail = 0.5 * math.erfc(z)
        if tail <= 0.0:
            return -math.inf
        return math.log(tail)


class Gamma(FamilyDescriptor):
    """Generator ``x^(alpha-1)/Gamma(alpha)`` on ``(0, inf)``, ``L = lam^-alpha``."""

    def __init__(self, alpha: float):
        _check_positive(alpha=alpha)
        if alpha > 1:
            note = "log-concave (alpha > 1); T(x) = x/sqrt(alpha-1)"
            tail = TailGrowth(0.0, 1.0)
        elif alpha == 1:
            note = "degenerate: s(x) = 1, b'' = 0, no two-point mixture qualifies"
            tail = TailGrowth(0.0, 0.0, certified=False)
        else:
            note = "log-convex (alpha < 1); b'' < 0"
            tail = TailGrowth(0.0, 0.0, certified=False)
        super().__init__(
            kind=FamilyKind("gamma", (alpha,)),
            support_left=0.0,
            lambda_domain=(0.0, math.inf),
            vf_text=f"(V, Omega) = (mu^2/{alpha!r}, (0, inf))",
            log_concavity_note=note,
            t_tail=tail,
        )
        object.__setattr__(self, "alpha", alpha)

    def log_s(self, x):
        self._check_x(x)
        return (self.alpha - 1.0) * math.log(x) - math.lgamma(self.alpha)

    def b_prime(self, x):
        return -(self.alpha - 1.0) / x

    def b_second(self, x):
        self._check_x(x)
        return (self.alpha - 1.0) / (x * x)

    def _laplace(self, lam):
        return lam ** (-self.alpha)

    def t_bound(self, x):
        if self.alpha <= 1:
            return None
        return x / math.sqrt(self.alpha - 1.0)

    def t_bound_slope(self, x):
        return 1.0 / x

    def member_log_survival(self, lam, x):
        if x <= 0:
            return 0.0
        a = self.alpha
        return specfun.log_upper_incomplete_gamma(a, lam * x) - math.lgamma(a)


class InverseGaussian(FamilyDescriptor):
    def __init__(self, alpha: float):
        _check_positive(alpha=alpha)
        super().__init__(
            kind=FamilyKind("ig", (alpha,)),
            support_left=0.0,
            lambda_domain=(0.0, math.inf),
            vf_text=f"(V, Omega) = (mu^3/{alpha**2!r}, (0, inf))",
            log_concavity_note=(
                f"not log-concave: b'' = (2 alpha^2 - 3x)/(2x^3) < 0 for x > {2 * alpha**2 / 3!r}; "
                "the sufficient condition does not apply"
            ),
            t_tail=TailGrowth(0.0, 0.0, certified=False),
            closed_left=True,
        )
        object.__setattr__(self, "alpha", alpha)

    def log_s(self, x):
        self._check_x(x)
        a = self.alpha
        return math.log(a) - 0.5 * LOG_2PI - 1.5 * math.log(x) - a * a / (2.0 * x)

    def b_prime(self, x):
        a = self.alpha
        return 1.5 / x - a * a / (2.0 * x * x)

    def b_second(self, x):
        self._check_x(x)
        a = self.alpha
        return (2.0 * a * a - 3.0 * x) / (2.0 * x**3)

    def _laplace(self, lam):
        return math.exp(-self.alpha * math.sqrt(2.0 * lam))


class HyperbolicCosine(FamilyDescriptor):
    """Density ``2^(alpha-2)/(pi Gamma(alpha)) |Gamma((alpha+ix)/2)|^2`` on R."""

    def __init__(self, alpha: float):
        _check_positive(alpha=alpha)
        if alpha == 1:
            tail = TailGrowth(HALF_PI, 0.0)
            note = "log-concave; T(x) = (2/pi) cosh(pi x/2)"
        elif alpha == 2:
            tail = TailGrowth(0.0, 1.0)
            note = "log-concave; T(x) <= (2/pi) sqrt(3 + (pi x/2)^2)"
        elif alpha > 1:
            tail = TailGrowth(0.0, 1.0, certified=False)
            note = "log-concave (alpha >= 1); no certified envelope of T"
        else:
            tail = TailGrowth(0.0, 0.0, certified=False)
            note = "not log-concave (alpha < 1): b'' ~ (alpha-1)/x^2 < 0 for large |x|"
        super().__init__(
            kind=FamilyKind("hc", (alpha,)),
            support_left=-math.inf,
            lambda_domain=(-HALF_PI, HALF_PI),
            vf_text=f"(V, Omega) = (mu^2/{alpha!r} + {alpha!r}, R)",
            log_concavity_note=note,
            t_tail=tail,
            special_points=(0.0,),
        )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(
            self, "_log_const", (alpha - 2.0) * math.log(2.0) - math.log(math.pi) - math.lgamma(alpha)
        )

    def _z(self, x):
        return complex(0.5 * self.alpha, 0.5 * x)

    def log_s(self, x):
        self._check_x(x)
        y = HALF_PI * x
        if self.alpha == 1:
            return -math.log(2.0) - _log_cosh(y)
        if self.alpha == 2 and abs(x) >= 0.1:
            ay = abs(y)
            return math.log(abs(x)) - math.log(2.0) - ay - math.log1p(-math.exp(-2.0 * ay)) + math.log(2.0)
        return self._log_const + 2.0 * specfun.log_gamma(self._z(x)).real

    def b_prime(self, x):
        if self.alpha == 1:
            return HALF_PI * math.tanh(HALF_PI * x)
        if self.alpha == 2 and abs(x) >= 0.1:
            return -1.0 / x + HALF_PI / math.tanh(HALF_PI * x)
        return specfun.digamma(self._z(x)).imag

    def b_second(self, x):
        self._check_x(x)
        y = HALF_PI * x
        if self.alpha == 1:
            e = math.exp(-2.0 * abs(y))
            return HALF_PI**2 * 4.0 * e / (1.0 + e) ** 2
        if self.alpha == 2 and abs(x) >= 0.1:
            return 1.0 / (x * x) - (HALF_PI / math.sinh(y)) ** 2 if abs(y) < 300 else 1.0 / (x * x)
        return 0.5 * specfun.trigamma(self._z(x)).real

    def _laplace(self, lam):
        return math.cos(lam) ** (-self.alpha)

    def t_bound(self, x):
        if self.alpha == 1:
            return (2.0 / math.pi) * math.cosh(HALF_PI * x)
        if self.alpha == 2:
            return (2.0 / math.pi) * math.sqrt(3.0 + (HALF_PI * x) ** 2)
        return None

    def t_bound_slope(self, x):
        if self.alpha == 1:
            return HALF_PI
        # d/dx log sqrt(3 + (pi x/2)^2) peaks at x = 2 sqrt(3)/pi
        t = max(abs(x), 2.0 * math.sqrt(3.0) / math.pi)
        q = HALF_PI * t
        return HALF_PI * q / (3.0 + q * q)


def ressel_laplace_unit(lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Laplace transform of the unit Ressel density at ``lam >= 0``.

    ``1/L`` is the root ``y >= 1`` of ``y - log y = 1 + lam``; the root lies in
    ``[1 + lam, 2(1 + lam)]`` because ``y/2 >= log y``.
    """
    if lam < 0:
        raise DomainError("outside natural parameter domain")
    if lam == 0:
        return 1.0
    target = 1.0 + lam
    y = find_root_monotone(
        lambda v: v - math.log(v) - target,
        target,
        2.0 * target,
        cfg,
        fprime=lambda v: 1.0 - 1.0 / v,
    )
    return 1.0 / y


def ressel_b2_published(alpha: float, x: float) -> float:
    """The published closed form ``-(alpha-1)/x + (alpha-1)/x^2 + psi'(x+alpha+1)``.

    Kept for erratum adjudication only; it is not the second derivative of
    ``-log s_alpha`` (that carries ``-1/x`` in place of ``-(alpha-1)/x``).
    """
    return -(alpha - 1.0) / x + (alpha - 1.0) / (x * x) + specfun.trigamma(x + alpha + 1.0)


class Ressel(FamilyDescriptor):
    """Kendall-Ressel density ``alpha x^(x+alpha-1) e^-x / Gamma(x+alpha+1)``."""

    def __init__(self, alpha: float):
        _check_positive(alpha=alpha)
        super().__init__(
            kind=FamilyKind("ressel", (alpha,)),
            support_left=0.0,
            lambda_domain=(0.0, math.inf),
            vf_text=f"(V, Omega) = (mu^2/{alpha!r} (1 + mu/{alpha!r}), (0, inf))",
            log_concavity_note=(
                f"published: log-concave iff alpha in [1, a], a in (1.77, 1.91), stored bound "
                f"{RESSEL_GLASER_UPPER!r}; ERRATUM 4: actual b'' = -1/x + (alpha-1)/x^2 + "
                "psi'(x+alpha+1) is negative on the tail (s ~ x^(-3/2)), so s is never log-concave"
            ),
            t_tail=TailGrowth(0.0, 0.5, certified=False),
            closed_left=True,
        )
        object.__setattr__(self, "alpha", alpha)

    def log_s(self, x):
        self._check_x(x)
        a = self.alpha
        return math.log(a) + (x + a - 1.0) * math.log(x) - x - math.lgamma(x + a + 1.0)

    def b_prime(self, x):
        a = self.alpha
        return -math.log(x) - (a - 1.0) / x + specfun.digamma(x + a + 1.0)

    def b_second(self, x):
        self._check_x(x)
        a = self.alpha
        return -1.0 / x + (a - 1.0) / (x * x) + specfun.trigamma(x + a + 1.0)

    def _laplace(self, lam):
        return ressel_laplace_unit(lam) ** self.alpha


def kummer_c_quadrature(a: float, b: float, lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """``C(a,b,lam) = int_0^inf x^(a-1) (1+x)^(-a-b) e^(-lam x) dx`` by quadrature.

    Substitutes ``x = u^(1/a)`` so the integrand is smooth at the origin.
    """
    if not (a > 0 and lam > 0):
        raise DomainError("need a > 0 and lambda > 0")
    inv_a = 1.0 / a

    def integrand(u):
        if u == 0.0:
            return inv_a
        x = u**inv_a
        return inv_a * math.exp(-(a + b) * math.log1p(x) - lam * x)

    return integrate_adaptive(integrand, 0.0, math.inf, cfg).value


def _kummer_integer_b(B: int, lam: float) -> float:
    # B!/lam^(B+1) sum_{n<=B} lam^n/n!
    total = 0.0
    term = 1.0
    for n in range(B + 1):
        if n:
            term *= lam / n
        total += term
    return math.exp(math.lgamma(B + 1.0) - (B + 1.0) * math.log(lam)) * total


# relative precision of the summed series before amplification
_SERIES_EPS = 1e-15
_CANCEL_LIMIT = 1e-10


def kummer_c(a: float, b: float, lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Normalizer ``C(a, b, lam)`` of the Kummer type 2 density.

    Routes: ``a = 1`` with integer ``B = -b-1 >= 0`` uses the finite binomial
    sum; ``a = 1`` with other ``B > -1`` uses the truncated-gamma series;
    non-integer ``b`` uses the two-term 1F1 decomposition. Whenever the
    estimated cancellation error exceeds 1e-10, or no closed route applies,
    quadrature is used.
    """
    if not (a > 0 and lam > 0):
        raise DomainError("outside natural parameter domain")
    B = -b - 1.0
    if a == 1.0 and B >= 0 and B == math.floor(B) and B < 170:
        return _kummer_integer_b(int(B), lam)
    if a == 1.0 and B > -1 and lam <= 50:
        # Gamma(B+1)/lam^(B+1) [e^lam - lam^(B+1)/Gamma(B+2) 1F1(1; B+2; lam)]
        head = math.exp(lam)
        tail = math.exp((B + 1.0) * math.log(lam) - math.lgamma(B + 2.0)) * specfun.hyp1f1(1.0, B + 2.0, lam)
        diff = head - tail
        if diff > 0 and _SERIES_EPS * (head + tail) / diff <= _CANCEL_LIMIT:
            return math.exp(math.lgamma(B + 1.0) - (B + 1.0) * math.log(lam)) * diff
    elif b != math.floor(b) and lam <= 50:
        t1 = math.gamma(b) * math.gamma(a) * specfun.rgamma(a + b) * specfun.hyp1f1(a, 1.0 - b, lam)
        t2 = math.gamma(-b) * lam**b * specfun.hyp1f1(a + b, 1.0 + b, lam)
        total = t1 + t2
        if total > 0 and _SERIES_EPS * (abs(t1) + abs(t2)) / total <= _CANCEL_LIMIT:
            return total
    return kummer_c_quadrature(a, b, lam, cfg)


def dyson_rhs(a: float, b: float, lam: float) -> float:
    """Right-hand side of the 1F1 decomposition of ``C(a, b, lam)`` (b non-integer)."""
    if b == math.floor(b):
        raise DomainError("b must not be an integer")
    t1 = math.gamma(b) * math.gamma(a) * specfun.rgamma(a + b) * specfun.hyp1f1(a, 1.0 - b, lam)
    t2 = math.gamma(-b) * lam**b * specfun.hyp1f1(a + b, 1.0 + b, lam)
    return t1 + t2


class Kummer(FamilyDescriptor):
    """Generator ``x^(a-1) (1+x)^(-a-b)`` on ``(0, inf)``; ``L(lam) = C(a, b, lam)``."""

    def __init__(self, a: float, b: float):
        _check_positive(a=a)
        A, B = a - 1.0, -b - 1.0
        concave = A >= 0 and B >= 0 and A + B > 0
        if concave:
            note = "log-concave (a >= 1, b <= -1, not both boundary)"
            tail = TailGrowth(0.0, 1.0 if B > 0 else 1.5)
        elif A == 0 and B == 0:
            note = "degenerate: a = 1, b = -1 gives b'' = 0"
            tail = TailGrowth(0.0, 0.0, certified=False)
        else:
            note = "not log-concave: needs a >= 1 and b <= -1"
            tail = TailGrowth(0.0, 0.0, certified=False)
        super().__init__(
            kind=FamilyKind("kummer", (a, b)),
            support_left=0.0,
            lambda_domain=(0.0, math.inf),
            vf_text="no explicit variance function",
            log_concavity_note=note,
            t_tail=tail,
        )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def log_s(self, x):
        self._check_x(x)
        return (self.a - 1.0) * math.log(x) - (self.a + self.b) * math.log1p(x)

    def b_prime(self, x):
        return -(self.a - 1.0) / x + (self.a + self.b) / (1.0 + x)

    def b_second(self, x):
        self._check_x(x)
        A, B = self.A, self.B
        return (A + 2.0 * A * x + B * x * x) / (x * x * (1.0 + x) ** 2)

    def _laplace(self, lam):
        return kummer_c(self.a, self.b, lam)

    def t_bound(self, x):
        A, B = self.A, self.B
        if not (A >= 0 and B >= 0 and A + B > 0):
            return None
        bounds = []
        if B > 0:
            bounds.append((1.0 + x) / math.sqrt(B))
        if A > 0:
            bounds.append(x * (1.0 + x) / math.sqrt(A * (1.0 + 2.0 * x)))
        return min(bounds)

    def t_bound_slope(self, x):
        slopes = []
        if self.B > 0:
            slopes.append(1.0 / (1.0 + x))
        if self.A > 0:
            slopes.append(1.0 / x + 1.0 / (1.0 + x) - 1.0 / (1.0 + 2.0 * x))
        return max(slopes)


_CONSTRUCTORS = {
    "normal": Normal,
    "gamma": Gamma,
    "ig": InverseGaussian,
    "hc": HyperbolicCosine,
    "ressel": Ressel,
    "kummer": Kummer,
}


def make_family(kind: FamilyKind | str) -> FamilyDescriptor:
    """Build the descriptor for ``kind`` (a FamilyKind or a spec string)."""
    if isinstance(kind, str):
        kind = parse_family(kind)
    try:
        ctor = _CONSTRUCTORS[kind.name]
    except KeyError:
        raise DomainError(f"unknown family {kind.name!r}") from None
    return ctor(*kind.params)


def b_second(fd: FamilyDescriptor, x: float) -> float:
    return fd.b_second(x)


def t_value(fd: FamilyDescriptor, x: float) -> float:
    """``T(x) = 1/sqrt(b''(x))``; raises where the density is not log-concave."""
    b2 = fd.b_second(x)
    if not b2 > 0:
        raise DomainError(f"density not log-concave at x={x!r}")
    return 1.0 / math.sqrt(b2)


def in_lambda_domain(fd: FamilyDescriptor, lam: float) -> bool:
    lo, hi = fd.lambda_domain
    return lo < lam < hi


def laplace(fd: FamilyDescriptor, lam: float) -> float:
    """``L(lam) = int e^(-lam x) s(x) dx`` on the natural parameter domain.

    The left end of the domain is accepted for families whose transform is
    finite there (Ressel, inverse Gaussian).
    """
    if not math.isfinite(lam):
        raise DomainError("outside natural parameter domain")
    if not (in_lambda_domain(fd, lam) or (fd.closed_left and lam == fd.lambda_domain[0])):
        raise DomainError("outside natural parameter domain")
    return fd._laplace(lam)


def log_laplace(fd: FamilyDescriptor, lam: float) -> float:
    """Cumulant function ``k(lam) = log L(lam)``."""
    if isinstance(fd, Normal) and math.isfinite(lam):
        return 0.5 * (fd.sigma * lam) ** 2
    return math.log(laplace(fd, lam))


def log_nef_density(fd: FamilyDescriptor, lam: float, x: float) -> float:
    return -lam * x - log_laplace(fd, lam) + fd.log_s(x)


def nef_density(fd: FamilyDescriptor, lam: float, x: float) -> float:
    """Member density ``e^(-lam x) s(x) / L(lam)``."""
    return math.exp(log_nef_density(fd, lam, x))


def laplace_quadrature(fd: FamilyDescriptor, lam: float, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """``int e^(-lam x) s(x) dx`` by adaptive quadrature over the support."""
    if isinstance(fd, Kummer):
        return kummer_c_quadrature(fd.a, fd.b, lam, cfg)

    def integrand(x):
        if not fd.in_support(x):
            return 0.0
        return math.exp(-lam * x + fd.log_s(x))

    lo = fd.support_left
    if fd.two_sided:
        left = integrate_adaptive(integrand, -math.inf, 0.0, cfg).value
        right = integrate_adaptive(integrand, 0.0, math.inf, cfg).value
        return left + right
    # the map x = t/(1-t) concentrates nodes near 0; split at 1 for heavy tails
    head = integrate_adaptive(integrand, lo, lo + 1.0, cfg).value
    tail = integrate_adaptive(integrand, lo + 1.0, math.inf, cfg).value
    return head + tail
