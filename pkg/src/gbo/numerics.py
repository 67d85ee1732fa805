"""Scalar numerics: error function, adaptive Simpson quadrature, bisection."""
from __future__ import annotations

import math

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def _erf_series(z: float) -> float:
    # erf(z) = 2/sqrt(pi) exp(-z^2) sum_n (2 z^2)^n z / (1*3*...*(2n+1)); every term is
    # positive, so there is no cancellation on |z| <= 2
    z2 = z * z
    term = z
    total = z
    n = 0
    while True:
        n += 1
        term *= 2.0 * z2 / (2 * n + 1)
        total += term
        if term <= 1e-17 * total:
            break
    return _TWO_OVER_SQRT_PI * math.exp(-z2) * total


def _erfc_cf(z: float) -> float:
    """erfc(z) for z > 2 by the Laplace continued fraction (modified Lentz)."""
    # erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + 2/(z + ...)))))
    tiny = 1e-300
    f = z
    c = z
    d = 0.0
    k = 1
    while k < 500:
        a = k / 2.0
        d = z + a * d
        d = tiny if d == 0.0 else d
        c = z + a / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
        k += 1
    return math.exp(-z * z) * _INV_SQRT_PI / f


def erf(z: float) -> float:
    """Gauss error function, absolute error below 1e-13 on the real line."""
    z = float(z)
    if math.isnan(z):
        return z
    if z < 0:
        return -erf(-z)
    if z == 0.0:
        return 0.0
    if z > 6.0:
        return 1.0
    if z <= 2.0:
        return _erf_series(z)
    return 1.0 - _erfc_cf(z)


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 40) -> float:
    """Integrate ``f`` over [a, b] with adaptive Simpson and Richardson correction."""
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth)
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1)
            + _simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1))


def bisect_decreasing(g, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of a nonincreasing ``g`` with ``g(lo) >= 0 >= g(hi)``."""
    glo, ghi = g(lo), g(hi)
    if glo < 0 or ghi > 0:
        raise ValueError(f"root not bracketed: g({lo})={glo}, g({hi})={ghi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
