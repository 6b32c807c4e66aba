"""Special functions: log-gamma, digamma and trigamma on the right half-plane,
the confluent hypergeometric series 1F1 and the upper incomplete gamma.

Complex arguments use Python's ``complex``; real arguments return ``float``.
"""

from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, DomainError

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2k for k = 1..6
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)
_SHIFT = 10.0


def _check_right_half(z):
    if z.real <= 0:
        raise DomainError("argument outside right half-plane")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("argument not finite")


def log_gamma(z: complex | float) -> complex | float:
    """log Gamma(z) for Re z > 0, continued analytically from the positive axis."""
    is_real = not isinstance(z, complex)
    z = complex(z)
    _check_right_half(z)
    if is_real and z.real in (1.0, 2.0):
        return 0.0
    zm = z - 1.0
    acc = complex(_LANCZOS[0])
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    val = _HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)
    return val.real if is_real else val


def _shifted(z, recur, asym):
    total = 0j
    while z.real < _SHIFT:
        total += recur(z)
        z += 1.0
    return total + asym(z)


def digamma(z: complex | float) -> complex | float:
    """psi(z) = Gamma'(z)/Gamma(z) for Re z > 0."""
    is_real = not isinstance(z, complex)
    z = complex(z)
    _check_right_half(z)

    def asym(w):
        inv2 = 1.0 / (w * w)
        s = 0j
        p = inv2
        for k, b in enumerate(_BERNOULLI, start=1):
            s += b / (2 * k) * p
            p *= inv2
        return cmath.log(w) - 0.5 / w - s

    val = _shifted(z, lambda w: -1.0 / w, asym)
    return val.real if is_real else val


def trigamma(z: complex | float) -> complex | float:
    """psi'(z) = sum_{n>=0} 1/(n+z)^2 for Re z > 0.

    Shifts Re z above 10 with psi'(z) = psi'(z+1) + 1/z^2, then applies
    psi'(w) ~ 1/w + 1/(2w^2) + sum_k B_2k / w^(2k+1) through B_12.
    """
    is_real = not isinstance(z, complex)
    z = complex(z)
    _check_right_half(z)

    def asym(w):
        inv = 1.0 / w
        inv2 = inv * inv
        s = inv + 0.5 * inv2
        p = inv2 * inv
        for b in _BERNOULLI:
            s += b * p
            p *= inv2
        return s

    val = _shifted(z, lambda w: 1.0 / (w * w), asym)
    return val.real if is_real else val


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def hyp1f1(a: float, b: float, lam: float, rel_tol: float = 1e-15, max_terms: int = 5000) -> float:
    """Kummer's confluent hypergeometric function 1F1(a; b; lam).

    Sums ``sum (a)_n lam^n / ((b)_n n!)`` and stops once three consecutive
    terms fall below ``rel_tol`` times the partial sum while the term ratio is
    below one half. Negative ``lam`` goes through Kummer's transformation
    ``e^lam 1F1(b-a; b; -lam)`` so the summed series has positive ratio.

    Raises:
        DomainError: ``b`` is a non-positive integer or ``|lam| > 50``.
        ConvergenceError: the series overflowed or did not settle.
    """
    if _is_nonpositive_integer(b):
        raise DomainError("b must not be a non-positive integer")
    if not math.isfinite(lam) or abs(lam) > 50.0:
        raise DomainError("|lambda| > 50 is not supported")
    if lam == 0.0 or a == 0.0:
        return 1.0
    if lam < 0:
        return math.exp(lam) * hyp1f1(b - a, b, -lam, rel_tol, max_terms)

    total = 1.0
    term = 1.0
    small = 0
    for n in range(max_terms):
        ratio = (a + n) * lam / ((b + n) * (n + 1))
        term *= ratio
        total += term
        if not math.isfinite(total):
            raise ConvergenceError("1F1 series overflow")
        if term == 0.0:
            return total
        if abs(term) < rel_tol * abs(total) and abs(ratio) < 0.5:
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError("1F1 series did not converge")


def rgamma(x: float) -> float:
    """1/Gamma(x) extended as an entire function (zero at non-positive integers)."""
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _lower_series(alpha, x):
    # gamma(alpha, x) = x^alpha e^-x sum_n x^n / (alpha (alpha+1) ... (alpha+n))
    term = 1.0 / alpha
    total = term
    for n in range(1, 10000):
        term *= x / (alpha + n)
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise ConvergenceError("incomplete gamma series did not converge")


def _upper_cf(alpha, x):
    # modified Lentz for Gamma(alpha, x) = e^-x x^alpha / (x + 1 - alpha - ...)
    tiny = 1e-300
    b = x + 1.0 - alpha
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - alpha)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ConvergenceError("incomplete gamma continued fraction did not converge")


def log_upper_incomplete_gamma(alpha: float, x: float) -> float:
    """log Gamma(alpha, x); stays finite where Gamma(alpha, x) underflows."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if not x >= 0:
        raise DomainError("x must be non-negative")
    if x == 0.0:
        return math.lgamma(alpha)
    if x < alpha + 1.0:
        lower = math.exp(alpha * math.log(x) - x + math.log(_lower_series(alpha, x)) - math.lgamma(alpha))
        return math.lgamma(alpha) + math.log1p(-lower)
    return alpha * math.log(x) - x + math.log(_upper_cf(alpha, x))


def upper_incomplete_gamma(alpha: float, x: float) -> float:
    """Gamma(alpha, x) = integral of t^(alpha-1) e^-t over [x, inf)."""
    return math.exp(log_upper_incomplete_gamma(alpha, x))
