"""Truncated power series in y = r**2 with exact rational coefficients.

Used to evaluate differences between E(r) and closed-form envelopes that
agree to O(r^8) at r = 0, where double-precision subtraction would return
pure rounding noise.
"""
import math
from fractions import Fraction

import numpy as np

from ._coeffs import e_coefficients

N = 40


def _trunc(a):
    return tuple(a[:N]) + (Fraction(0),) * (N - len(a))


def const(c):
    return _trunc([Fraction(c)])


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(a, c):
    c = Fraction(c)
    return tuple(c * x for x in a)


def mul(a, b):
    out = [Fraction(0)] * N
    for i, ai in enumerate(a):
        if ai:
            for j in range(N - i):
                out[i + j] += ai * b[j]
    return tuple(out)


def inv(a):
    if a[0] == 0:
        raise ZeroDivisionError("series has no constant term")
    out = [Fraction(0)] * N
    out[0] = 1 / a[0]
    for n in range(1, N):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, n + 1)) / a[0]
    return tuple(out)


def div(a, b):
    return mul(a, inv(b))


def sqrt(a):
    """Square root of a series whose constant term is 1."""
    if a[0] != 1:
        raise ValueError("constant term must be 1")
    out = [Fraction(0)] * N
    out[0] = Fraction(1)
    for n in range(1, N):
        out[n] = (a[n] - sum(out[k] * out[n - k] for k in range(1, n))) / 2
    return tuple(out)


def power(a, alpha):
    """a**alpha for a series with constant term 1 and rational ``alpha``."""
    if a[0] != 1:
        raise ValueError("constant term must be 1")
    alpha = Fraction(alpha)
    out = [Fraction(0)] * N
    out[0] = Fraction(1)
    for n in range(1, N):
        out[n] = sum(((alpha + 1) * k - n) * a[k] * out[n - k] for k in range(1, n + 1)) / n
    return tuple(out)


def y():
    return _trunc([Fraction(0), Fraction(1)])


def complement():
    """x = sqrt(1 - y), i.e. r' as a series in r**2."""
    return sqrt(sub(const(1), y()))


def ellip_e():
    """E(r) / (pi/2)."""
    return _trunc(list(e_coefficients(N)))


def evaluate(coeffs_pi, coeffs_rat, yv):
    """Evaluate ``(pi/2) * P(y) + Q(y)`` and the sum of absolute term sizes.

    Coefficients are combined per power before rounding, so terms that cancel
    exactly in rational arithmetic contribute exactly zero.  Works on floats
    and numpy arrays.
    """
    half_pi = 0.5 * math.pi
    yv = np.asarray(yv, dtype=np.float64)
    total = np.zeros_like(yv)
    size = np.zeros_like(yv)
    yn = np.ones_like(yv)
    for p, q in zip(coeffs_pi, coeffs_rat):
        if p or q:
            c = half_pi * float(p) + float(q)
            total += c * yn
            size += (half_pi * abs(float(p)) + abs(float(q))) * yn
        yn = yn * yv
    if total.ndim == 0:
        return float(total), float(size)
    return total, size
