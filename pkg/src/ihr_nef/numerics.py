"""Numerical kernels: adaptive Gauss-Kronrod quadrature, safeguarded root
finding and one-dimensional minimization.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Callable
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

# Kronrod 15-point abscissae on [-1, 1] (non-negative half) and weights;
# every odd index is also a Gauss 7-point node.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16
_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances and iteration caps shared by the numerical kernels."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    max_iterations: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be strictly positive")
        if self.max_subdivisions < 10 or self.max_iterations < 10:
            raise DomainError("iteration caps must be at least 10")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_err_estimate: float
    subdivisions: int


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    if not math.isfinite(fc):
        raise DomainError("integrand not finite")
    kronrod = fc * _WGK[7]
    gauss = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            raise DomainError("integrand not finite")
        kronrod += _WGK[j] * (f1 + f2)
        if j % 2 == 1:
            gauss += _WG[j // 2] * (f1 + f2)
    return kronrod * half, abs((kronrod - gauss) * half)


def _adaptive_finite(f, a, b, cfg):
    value, err = _gk15(f, a, b)
    # max-heap on panel error
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    n = 1
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        if n >= cfg.max_subdivisions:
            raise ConvergenceError("quadrature did not converge")
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            raise ConvergenceError("quadrature did not converge")
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        n += 1
    # re-sum to shed the drift of the running updates
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return QuadratureResult(total, total_err, n)


def _panel_extension(f, a, direction, cfg):
    """Integrate f from a towards +inf (direction=1) or -inf (direction=-1)
    over doubling panels until a panel contributes less than abs_tol."""
    width = 1.0
    start = a
    total = 0.0
    err = 0.0
    subdivisions = 0
    for _ in range(cfg.max_iterations):
        end = start + direction * width
        lo, hi = (start, end) if direction > 0 else (end, start)
        res = _adaptive_finite(f, lo, hi, cfg)
        total += res.value
        err += res.abs_err_estimate
        subdivisions += res.subdivisions
        if abs(res.value) < cfg.abs_tol and subdivisions > 0:
            return QuadratureResult(total, err + abs(res.value), subdivisions)
        start = end
        width *= 2.0
    raise ConvergenceError("quadrature did not converge")


def integrate_adaptive(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: ToleranceConfig = DEFAULT_TOL,
) -> QuadratureResult:
    """Integrate ``f`` over ``[lo, hi]`` with adaptive Gauss-Kronrod (7/15).

    Infinite endpoints are mapped onto a finite interval with
    ``x = A + t/(1-t)`` (and ``x = t/(1-t^2)`` for the whole line). If the
    mapped integral does not converge, doubling panels are added outward until
    a panel contributes less than ``cfg.abs_tol``.

    Args:
        f: Integrand, finite on the open interval.
        lo: Lower limit, may be ``-math.inf``.
        hi: Upper limit, may be ``math.inf``.
        cfg: Tolerances.

    Returns:
        QuadratureResult with value, error estimate and panel count.

    Raises:
        DomainError: ``f`` returned NaN or an infinity.
        ConvergenceError: tolerance not met within ``cfg.max_subdivisions``.
    """
    if math.isnan(lo) or math.isnan(hi):
        raise DomainError("integration limits must not be NaN")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 1)
    if lo > hi:
        res = integrate_adaptive(f, hi, lo, cfg)
        return QuadratureResult(-res.value, res.abs_err_estimate, res.subdivisions)

    lo_inf = math.isinf(lo)
    hi_inf = math.isinf(hi)
    if not lo_inf and not hi_inf:
        return _adaptive_finite(f, lo, hi, cfg)

    if lo_inf and hi_inf:
        def g(t):
            den = 1.0 - t * t
            return f(t / den) * (1.0 + t * t) / (den * den)
        lims = (-1.0, 1.0)
    elif hi_inf:
        def g(t):
            den = 1.0 - t
            return f(lo + t / den) / (den * den)
        lims = (0.0, 1.0)
    else:
        def g(t):
            den = 1.0 - t
            return f(hi - t / den) / (den * den)
        lims = (0.0, 1.0)

    try:
        return _adaptive_finite(g, *lims, cfg)
    except ConvergenceError:
        pass
    if lo_inf and hi_inf:
        right = _panel_extension(f, 0.0, 1, cfg)
        left = _panel_extension(f, 0.0, -1, cfg)
        return QuadratureResult(
            right.value + left.value,
            right.abs_err_estimate + left.abs_err_estimate,
            right.subdivisions + left.subdivisions,
        )
    if hi_inf:
        return _panel_extension(f, lo, 1, cfg)
    res = _panel_extension(f, hi, -1, cfg)
    return res


def find_root_monotone(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: ToleranceConfig = DEFAULT_TOL,
    fprime: Callable[[float], float] | None = None,
) -> float:
    """Root of a monotone function bracketed by ``[lo, hi]``.

    A Newton step (secant step when ``fprime`` is omitted) is taken only if it
    lands strictly inside the current bracket and at least halves ``|f|``;
    otherwise the bracket is bisected.

    Raises:
        DomainError: ``f(lo)`` and ``f(hi)`` have the same strict sign.
        ConvergenceError: ``cfg.max_iterations`` exhausted.
    """
    if lo > hi:
        lo, hi = hi, lo
    flo = f(lo)
    fhi = f(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise DomainError("function not finite at bracket endpoints")
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise DomainError("root not bracketed")

    # orient so that f(a) < 0 < f(b)
    a, b = (lo, hi) if flo < 0 else (hi, lo)
    x = 0.5 * (lo + hi)
    fx = f(x)
    prev_x, prev_fx = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for _ in range(cfg.max_iterations):
        if fx == 0.0 or abs(fx) <= cfg.abs_tol:
            return x
        if fx < 0:
            a = x
        else:
            b = x
        width = abs(b - a)
        if width <= 4.0 * _EPS * max(1.0, abs(x)):
            return x
        if width <= cfg.rel_tol * abs(x) and abs(fx) <= 10.0 * cfg.abs_tol:
            return x

        step = None
        if fprime is not None:
            dfx = fprime(x)
            if dfx != 0.0 and math.isfinite(dfx):
                step = x - fx / dfx
        elif fx != prev_fx:
            step = x - fx * (x - prev_x) / (fx - prev_fx)

        left, right = min(a, b), max(a, b)
        candidate = None
        if step is not None and left < step < right:
            f_step = f(step)
            if abs(f_step) <= 0.5 * abs(fx):
                candidate = (step, f_step)
        prev_x, prev_fx = x, fx
        if candidate is None:
            x = 0.5 * (a + b)
            fx = f(x)
        else:
            x, fx = candidate
        if not math.isfinite(fx):
            raise DomainError("function not finite inside bracket")
    raise ConvergenceError("root finder did not converge")


def minimize_unimodal(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: ToleranceConfig = DEFAULT_TOL,
    fprime: Callable[[float], float] | None = None,
) -> tuple[float, float]:
    """Minimize a unimodal function on ``[lo, hi]``.

    With ``fprime`` the minimizer is the bracketed root of the derivative (or
    an endpoint when the derivative does not change sign), which locates it to
    ``cfg.rel_tol``. Without it, golden-section search is used; that pins the
    minimum value to rounding but the location only to about ``sqrt(eps)``.

    Returns:
        ``(x_min, f(x_min))``.
    """
    if lo > hi:
        lo, hi = hi, lo

    def checked(x):
        v = f(x)
        if not math.isfinite(v):
            raise DomainError("objective not finite")
        return v

    if fprime is not None:
        dlo, dhi = fprime(lo), fprime(hi)
        if dlo >= 0:
            x = lo
        elif dhi <= 0:
            x = hi
        else:
            x = find_root_monotone(fprime, lo, hi, cfg)
        return x, checked(x)

    a, b = lo, hi
    x1 = a + _GOLDEN * (b - a)
    x2 = b - _GOLDEN * (b - a)
    f1, f2 = checked(x1), checked(x2)
    for _ in range(cfg.max_iterations):
        if b - a <= max(cfg.rel_tol * abs(0.5 * (a + b)), 4.0 * _EPS * max(1.0, abs(a), abs(b))):
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = a + _GOLDEN * (b - a)
            f1 = checked(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = b - _GOLDEN * (b - a)
            f2 = checked(x2)
    candidates = [(f1, x1), (f2, x2), (checked(lo), lo), (checked(hi), hi)]
    best_f, best_x = min(candidates)
    return best_x, best_f
