"""Bivariate means: arithmetic, power, contraharmonic, Toader and J(x).

Every mean here is symmetric and homogeneous of degree one.  For a pair
with larger element M and smaller m, write A = (M + m)/2 and
r = (M - m)/(M + m); then M = A(1 + r), m = A(1 - r) and each mean equals
A * (1 + excess(r)).  The ``*_excess`` functions evaluate that relative
excess without cancellation, which is what the verification code compares
when two means agree to high order as r -> 0.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _series as ps
from . import elliptic
from ._coeffs import SERIES_R_MAX, combo_coefficients
from ._core import kernels
from .errors import ConvergenceError, DomainError

TWO_OVER_PI = 2.0 / math.pi
# exponent of the best power-mean upper bound for T
POWER_UPPER_EXPONENT = math.log(2.0) / math.log(math.pi / 2.0)


class PositivePair(NamedTuple):
    a: float
    b: float

    @property
    def ordered(self):
        return (self.a, self.b) if self.a >= self.b else (self.b, self.a)


def _pair(a, b):
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"means need two finite positive numbers, got ({a!r}, {b!r})")
    return a, b


def arithmetic(a, b):
    a, b = _pair(a, b)
    return 0.5 * (a + b)


def contraharmonic(a, b):
    """C(a, b) = (a^2 + b^2) / (a + b)."""
    a, b = _pair(a, b)
    if a == b:
        return a
    return (a * a + b * b) / (a + b)


def power_mean(a, b, p):
    """M_p(a, b) = ((a^p + b^p)/2)^(1/p), and sqrt(ab) for p = 0.

    Evaluated in log space as ``log M + log1p(expm1(p d)/2)/p`` so that it is
    continuous through p = 0 and does not overflow for large |p|.
    """
    a, b = _pair(a, b)
    p = float(p)
    if a == b:
        return a
    if p == 0.0:
        return math.sqrt(a) * math.sqrt(b)
    hi, lo = (a, b) if a > b else (b, a)
    # choose the anchor so that p * d <= 0
    anchor, other = (hi, lo) if p > 0 else (lo, hi)
    d = math.log(other / anchor)
    return anchor * math.exp(math.log1p(0.5 * math.expm1(p * d)) / p)


def toader(a, b):
    """T(a, b) = (2/pi) int_0^{pi/2} sqrt(a^2 cos^2 + b^2 sin^2) = (2 max/pi) E(k)

    with complementary modulus k' = min/max, which is passed to the AGM
    exactly instead of being recovered from k.
    """
    a, b = _pair(a, b)
    if a == b:
        return a
    hi, lo = (a, b) if a > b else (b, a)
    t = lo / hi
    r = math.sqrt((1.0 - t) * (1.0 + t))
    return TWO_OVER_PI * hi * kernels.agm(r, t)[1]


def toader_oracle(a, b, tol=1e-13):
    """T(a, b) by adaptive quadrature of its defining integral."""
    a, b = _pair(a, b)
    values, errors, panels, status = kernels.simpson_batch(
        1, np.array([a * a]), np.array([b * b]), tol, elliptic.ORACLE_MAX_PANELS)
    if status[0] != 0:
        raise ConvergenceError(f"quadrature of T({a!r}, {b!r}) did not converge")
    return TWO_OVER_PI * float(values[0])


def j_interp(x, a, b):
    """J(x) = C(x a + (1 - x) b, x b + (1 - x) a) for x in [1/2, 1]."""
    a, b = _pair(a, b)
    x = float(x)
    if not 0.5 <= x <= 1.0:
        raise DomainError(f"interpolation parameter must lie in [1/2, 1], got {x!r}")
    return contraharmonic(*blend(x, a, b))


def blend(x, a, b):
    """The convex blends (x a + (1 - x) b, x b + (1 - x) a)."""
    return x * a + (1.0 - x) * b, x * b + (1.0 - x) * a


def pair_to_modulus(a, b):
    """r = (max - min)/(max + min); inverse: min/max = (1 - r)/(1 + r)."""
    a, b = _pair(a, b)
    if a == b:
        raise DomainError("equal arguments map to r = 0; handle a == b directly")
    return abs(a - b) / (a + b)


def modulus_to_ratio(r):
    """t = (1 - r)/(1 + r), the ratio min/max for Landen modulus r."""
    return (1.0 - r) / (1.0 + r)


# --- relative excess over the arithmetic mean, as functions of r ---------

def toader_excess(r):
    """T/A - 1 = (2/pi)(2E - r'^2 K) - 1 at Landen modulus r."""
    if isinstance(r, np.ndarray):
        return TWO_OVER_PI * elliptic.grid(r).landen_excess
    return TWO_OVER_PI * elliptic.landen_excess(r)


def contraharmonic_excess(r):
    """C/A - 1 = r^2."""
    return r * r


def j_excess(r, x):
    """J(x)/A - 1 = (2x - 1)^2 r^2."""
    return (2.0 * x - 1.0) ** 2 * r * r


_POWER_SERIES_R_MAX = 0.1


def _binomial_even_series(p, y):
    """sum_{n>=1} binom(p, 2n) y^n, for y <= 0.01."""
    total = np.zeros_like(y)
    coef = 1.0
    yn = np.ones_like(y)
    for k in range(1, 60):
        coef *= (p - k + 1) / k
        if k % 2:
            continue
        yn = yn * y
        term = coef * yn
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return total


def power_excess(r, p):
    """M_p/A - 1 = (((1+r)^p + (1-r)^p)/2)^(1/p) - 1, cancellation-free."""
    scalar = not isinstance(r, np.ndarray)
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    p = float(p)
    y = r * r
    if p == 0.0:
        out = -y / (1.0 + np.sqrt((1.0 - r) * (1.0 + r)))
    else:
        s = np.empty_like(r)
        small = r <= _POWER_SERIES_R_MAX
        s[small] = _binomial_even_series(p, y[small])
        big = ~small
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s[big] = 0.5 * (np.expm1(p * np.log1p(r[big]))
                            + np.expm1(p * np.log1p(-r[big])))
            out = np.expm1(np.log1p(s) / p)
    return float(out[0]) if scalar else out


@lru_cache(maxsize=8)
def _toader_minus_power_series(p):
    """Exact series in y = r^2 of (T - M_p)/A for rational p."""
    s = [Fraction(0)] * ps.N
    coef = Fraction(1)
    for k in range(1, 2 * ps.N):
        coef *= (p - k + 1) / Fraction(k)
        if k % 2 == 0 and k // 2 < ps.N:
            s[k // 2] = coef
    m = ps.power(ps.add(ps.const(1), tuple(s)), 1 / p)
    h = (Fraction(1),) + tuple(combo_coefficients(ps.N - 1)[1])
    return tuple(hn - mn for hn, mn in zip(h, m))


def toader_minus_power(r, p):
    """((T - M_p)/A, size) at Landen modulus r; both means share A.

    When p is a simple rational and r <= 0.25 the difference is summed from
    its exact series, so the O(r^4) contact of T with M_{3/2} is resolved.
    """
    scalar = not isinstance(r, np.ndarray)
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    h = toader_excess(r)
    m = power_excess(r, p)
    value = h - m
    size = np.maximum(np.abs(h), np.abs(m))
    q = Fraction(float(p))
    near = r <= SERIES_R_MAX
    if q != 0 and q.denominator <= 64 and near.any():
        value[near], size[near] = ps.evaluate(
            (0,) * ps.N, _toader_minus_power_series(q), r[near] ** 2)
    return (float(value[0]), float(size[0])) if scalar else (value, size)
