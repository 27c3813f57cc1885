"""Sharp constants for C(J-blend) vs. alpha*A + (1-alpha)*T, the gap function
f_{u,alpha}, and closed-form envelopes for E(r).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import _series as ps
from . import elliptic, means
from ._coeffs import SERIES_R_MAX, combo_coefficients_float
from .errors import DomainError

HALF_PI = 0.5 * math.pi
FOUR_OVER_PI_MINUS_ONE = 4.0 / math.pi - 1.0

# tail of (T/A - 1) = sum_{n>=1} c_n y^n after the leading y/4
_H_TAIL = combo_coefficients_float()[1][1:]


def _alpha(alpha, closed=False):
    alpha = float(alpha)
    ok = 0.0 <= alpha <= 1.0 if closed else 0.0 < alpha < 1.0
    if not ok:
        raise DomainError(f"alpha must lie in {'[0, 1]' if closed else '(0, 1)'}, got {alpha!r}")
    return alpha


def lambda_star(alpha):
    """Largest lambda with C(lambda-blend) < alpha*A + (1-alpha)*T.

    Accepts the closed interval [0, 1]; the endpoints are limits.
    """
    return 0.5 + 0.25 * math.sqrt(1.0 - _alpha(alpha, closed=True))


def mu_star(alpha):
    """Smallest mu with alpha*A + (1-alpha)*T < C(mu-blend)."""
    alpha = _alpha(alpha, closed=True)
    return 0.5 * (1.0 + math.sqrt((1.0 - alpha) * FOUR_OVER_PI_MINUS_ONE))


def single_mean_beta():
    """Sharp upper blend constant for T alone: 1/2 + sqrt(4 pi - pi^2)/(2 pi)."""
    return 0.5 + math.sqrt(4.0 * math.pi - math.pi**2) / (2.0 * math.pi)


def lower_threshold(alpha):
    """(1 - alpha)/4: f_{u,alpha} < 0 on (0, 1) iff u <= this."""
    return (1.0 - _alpha(alpha, closed=True)) / 4.0


def upper_threshold(alpha):
    """(1 - alpha)(4/pi - 1): f_{u,alpha} > 0 on (0, 1) iff u >= this."""
    return (1.0 - _alpha(alpha, closed=True)) * FOUR_OVER_PI_MINUS_ONE


def interp_to_u(p):
    """u = (1 - 2p)^2, the squared blend offset."""
    return (1.0 - 2.0 * p) ** 2


def combination(alpha, a, b):
    """alpha * A(a, b) + (1 - alpha) * T(a, b)."""
    alpha = _alpha(alpha, closed=True)
    if a == b:
        return means.arithmetic(a, b)
    return alpha * means.arithmetic(a, b) + (1.0 - alpha) * means.toader(a, b)


class GapParams(NamedTuple):
    u: float
    alpha: float


def f_terms(u, alpha, r):
    """f_{u,alpha}(r) together with the size of the terms it was formed from.

    f = u r^2 - (1 - alpha)[(2/pi)(2E - r'^2 K) - 1].  For r <= 0.25 the
    leading r^2/4 of the bracket is folded into u analytically:
    f = (u - (1-alpha)/4) r^2 - (1-alpha) * tail(r^2).
    """
    alpha = _alpha(alpha, closed=True)
    u = float(u)
    arr = np.asarray(r, dtype=np.float64)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise DomainError("f_{u,alpha} is defined for r in (0, 1)")
    r1 = np.atleast_1d(arr)
    y = r1 * r1
    w = 1.0 - alpha
    value = np.empty_like(r1)
    size = np.empty_like(r1)

    small = r1 <= SERIES_R_MAX
    if small.any():
        ys = y[small]
        tail = np.zeros_like(ys)
        for c in reversed(_H_TAIL):
            tail = tail * ys + c
        tail *= ys * ys
        lead = (u - 0.25 * w) * ys
        value[small] = lead - w * tail
        size[small] = np.abs(lead) + w * tail
    big = ~small
    if big.any():
        h = means.toader_excess(r1[big])
        value[big] = u * y[big] - w * h
        size[big] = u * y[big] + w * (np.abs(h) + 1.0)
    if arr.ndim == 0:
        return float(value[0]), float(size[0])
    return value.reshape(arr.shape), size.reshape(arr.shape)


def f_u_alpha(u, alpha, r):
    """The gap function u r^2 - (1-alpha){(2/pi)[2E - (1 - r^2)K] - 1}."""
    return f_terms(u, alpha, r)[0]


def f_limit_at_one(u, alpha):
    """f_{u,alpha}(1-) = u - (1 - alpha)(4/pi - 1)."""
    return u - upper_threshold(alpha)


def g_fn(r):
    """g(r) = (1/pi)(E - r'^2 K)/r^2, increasing from 1/4 to 1/pi."""
    r = elliptic._modulus(r, open_left=True, open_right=True)
    return elliptic.lemma21_ratio(r) / math.pi


def theorem31_check(alpha, p, a, b):
    """C(p a + (1-p) b, p b + (1-p) a) - alpha A(a, b) - (1-alpha) T(a, b).

    Evaluated directly from the means; negative for p <= lambda_star(alpha)
    and positive for p >= mu_star(alpha).
    """
    if a == b:
        raise DomainError("the gap vanishes identically for a == b")
    return means.contraharmonic(*means.blend(p, a, b)) - combination(alpha, a, b)


def theorem31_terms(alpha, p, a, b):
    """Reduced form A(a, b) * f_{u,alpha}(r) of the same gap, with term size.

    Vectorised over a, b.  ``r = |a - b|/(a + b)`` and ``u = (1 - 2p)^2``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if np.any(a == b):
        raise DomainError("the gap vanishes identically for a == b")
    s = a + b
    r = np.abs(a - b) / s
    value, size = f_terms(interp_to_u(p), alpha, r)
    return 0.5 * s * value, 0.5 * s * size


def theorem31_reduced(alpha, p, a, b):
    return theorem31_terms(alpha, p, a, b)[0]


# --- envelopes for E(r) ---------------------------------------------------

SERIES_CUT = 0.3


@dataclass(frozen=True)
class BoundEnvelope:
    """Closed-form lower/upper bounds for E(r) on (0, 1).

    ``lower_series``/``upper_series`` optionally hold exact rational series
    (pi-part, rational-part) of the bound in r^2, used by ``margins`` near
    r = 0 where the bound and E agree to high order.
    """

    name: str
    lower: Callable
    upper: Callable
    strict: bool = True
    label: str = ""
    lower_series: Optional[tuple] = field(default=None, repr=False)
    upper_series: Optional[tuple] = field(default=None, repr=False)

    def margins(self, r):
        """Return ``(E - lower, scale_lo, upper - E, scale_hi)``.

        Each scale is the magnitude of the quantities combined to get the
        margin, so ``margin > 1e-15 * scale`` witnesses a strict inequality.
        """
        arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
        e = elliptic.grid(arr).E
        lo = np.asarray(self.lower(arr), dtype=np.float64)
        hi = np.asarray(self.upper(arr), dtype=np.float64)
        lo_m, lo_s = e - lo, np.maximum(np.abs(e), np.abs(lo))
        hi_m, hi_s = hi - e, np.maximum(np.abs(e), np.abs(hi))
        near = arr <= SERIES_CUT
        if near.any():
            y = arr[near] ** 2
            if self.lower_series is not None:
                pi_c, rat_c = _series_gap(self.lower_series, lower=True)
                lo_m[near], lo_s[near] = ps.evaluate(pi_c, rat_c, y)
            if self.upper_series is not None:
                pi_c, rat_c = _series_gap(self.upper_series, lower=False)
                hi_m[near], hi_s[near] = ps.evaluate(pi_c, rat_c, y)
        if np.ndim(r) == 0:
            return float(lo_m[0]), float(lo_s[0]), float(hi_m[0]), float(hi_s[0])
        return lo_m, lo_s, hi_m, hi_s


@lru_cache(maxsize=None)
def _series_gap(side, lower):
    pi_part, rat_part = side
    e = ps.ellip_e()
    if lower:
        return ps.sub(e, pi_part), ps.scale(rat_part, -1)
    return ps.sub(pi_part, e), rat_part


def _xc(r):
    r = np.asarray(r, dtype=np.float64)
    return r, np.sqrt((1.0 - r) * (1.0 + r))


def _maybe_float(v, r):
    return float(v) if np.ndim(r) == 0 else v


def corollary33_lower(r):
    _, x = _xc(r)
    v = HALF_PI * ((17.0 + 30.0 * x + 17.0 * x * x) / (8.0 * (1.0 + x)) - 1.5 * (1.0 + x))
    return _maybe_float(v, r)


def corollary33_upper(r):
    """pi (r' + (1 - r')^2/pi)/(1 + r'): the upper bound of the sharp double inequality at
    alpha = 3/4, mu = (1 + sqrt(4/pi - 1)/2)/2, solved for E."""
    _, x = _xc(r)
    v = math.pi * (x + (1.0 - x) ** 2 / math.pi) / (1.0 + x)
    return _maybe_float(v, r)


def corollary33_printed_upper(r):
    """pi (r' + 2(1 - r')^2/pi)/(1 + r'), valid but weaker than
    ``corollary33_upper`` by (1 - r')^2/(1 + r')."""
    _, x = _xc(r)
    v = math.pi * (x + 2.0 * (1.0 - x) ** 2 / math.pi) / (1.0 + x)
    return _maybe_float(v, r)


_SQRT2 = math.sqrt(2.0)


def chu34_lower(r):
    _, x = _xc(r)
    v = HALF_PI * (0.5 * np.sqrt(0.5 * (1.0 + x * x)) + 0.25 * (1.0 + x))
    return _maybe_float(v, r)


def chu34_upper(r):
    _, x = _xc(r)
    c1 = (4.0 - math.pi) / ((_SQRT2 - 1.0) * math.pi)
    c2 = (_SQRT2 * math.pi - 4.0) / (2.0 * (_SQRT2 - 1.0) * math.pi)
    v = HALF_PI * (c1 * np.sqrt(0.5 * (1.0 + x * x)) + c2 * (1.0 + x))
    return _maybe_float(v, r)


def guoqi35_lower(r):
    """pi/2 - (1/2) log((1+r)^(1-r) / (1-r)^(1+r))."""
    r_ = np.asarray(r, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = HALF_PI - 0.5 * ((1.0 - r_) * np.log1p(r_) - (1.0 + r_) * np.log1p(-r_))
    return _maybe_float(v, r)


def guoqi35_upper(r):
    """(pi - 1)/2 + (1 - r^2)/(4r) log((1+r)/(1-r)); 3-term series below 1e-4."""
    r_ = np.atleast_1d(np.asarray(r, dtype=np.float64))
    y = r_ * r_
    ratio = np.empty_like(r_)  # atanh(r)/r
    tiny = r_ < 1e-4
    ratio[tiny] = 1.0 + y[tiny] / 3.0 + y[tiny] ** 2 / 5.0
    rest = ~tiny
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio[rest] = np.arctanh(r_[rest]) / r_[rest]
    v = 0.5 * (math.pi - 1.0) + 0.5 * (1.0 - r_) * (1.0 + r_) * ratio
    v = np.where(r_ == 1.0, 0.5 * (math.pi - 1.0), v)
    return float(v[0]) if np.ndim(r) == 0 else v.reshape(np.shape(r))


def yinqi36_lower(r):
    r_, x = _xc(r)
    v = HALF_PI * np.sqrt(6.0 + 2.0 * x - 3.0 * r_ * r_) / (2.0 * _SQRT2)
    return _maybe_float(v, r)


def yinqi36_upper(r):
    r_, x = _xc(r)
    v = HALF_PI * np.sqrt(10.0 - 2.0 * x - 5.0 * r_ * r_) / (2.0 * _SQRT2)
    return _maybe_float(v, r)


@lru_cache(maxsize=None)
def _envelope_series():
    x = ps.complement()
    one = ps.const(1)
    zero = ps.const(0)
    onepx = ps.add(one, x)
    onemx = ps.sub(one, x)
    c33_lo = ps.div(ps.add(ps.add(ps.scale(ps.mul(x, x), 5), ps.scale(x, 6)), ps.const(5)),
                    ps.scale(onepx, 8))
    c33_hi_pi = ps.div(ps.scale(x, 2), onepx)
    c33_hi_rat = ps.div(ps.mul(onemx, onemx), onepx)
    rms_lo = ps.add(ps.scale(ps.sqrt(ps.sub(one, ps.scale(ps.y(), Fraction(1, 2)))), Fraction(1, 2)),
                    ps.scale(onepx, Fraction(1, 4)))
    yq_lo = ps.sqrt(ps.scale(ps.sub(ps.add(ps.const(6), ps.scale(x, 2)), ps.scale(ps.y(), 3)),
                             Fraction(1, 8)))
    yq_hi = ps.sqrt(ps.scale(ps.sub(ps.sub(ps.const(10), ps.scale(x, 2)), ps.scale(ps.y(), 5)),
                             Fraction(1, 8)))
    return {
        "corollary33": ((c33_lo, zero), (c33_hi_pi, c33_hi_rat)),
        "corollary33_printed": ((c33_lo, zero), (c33_hi_pi, ps.scale(c33_hi_rat, 2))),
        "chu34": ((rms_lo, zero), None),
        "guoqi35": (None, None),
        "yinqi36": ((yq_lo, zero), (yq_hi, zero)),
    }


_ENVELOPES = {
    "corollary33": (corollary33_lower, corollary33_upper, True,
                    "alpha=3/4, lambda=5/8, mu=(1+sqrt(4/pi-1)/2)/2 in the sharp double inequality"),
    "corollary33_printed": (corollary33_lower, corollary33_printed_upper, True,
                            "as corollary33 with the upper bound's (1-r')^2 term doubled"),
    "chu34": (chu34_lower, chu34_upper, True, "root-mean-square type bounds"),
    "guoqi35": (guoqi35_lower, guoqi35_upper, True, "logarithmic bounds"),
    "yinqi36": (yinqi36_lower, yinqi36_upper, False, "nested square-root bounds (non-strict)"),
}

ENVELOPE_NAMES = tuple(_ENVELOPES)


def envelope(name) -> BoundEnvelope:
    """Look up a shipped envelope by name; raises LookupError if unknown."""
    try:
        lower, upper, strict, label = _ENVELOPES[name]
    except KeyError:
        raise LookupError(
            f"unknown envelope {name!r}; choose from {', '.join(ENVELOPE_NAMES)}") from None
    lo_s, hi_s = _envelope_series()[name]
    return BoundEnvelope(name, lower, upper, strict, label, lo_s, hi_s)


def theorem31_envelope(alpha, lam, mu) -> BoundEnvelope:
    """Bounds for E(r) obtained by solving the double inequality for T.

    With a = 1 and b = r', T(1, r') = (2/pi) E(r), so
    E(r) > (pi/2)[C(lam-blend) - alpha (1 + r')/2] / (1 - alpha), and
    likewise with mu for the upper bound.
    """
    alpha = _alpha(alpha)

    def side(p):
        def bound(r):
            arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
            out = np.empty_like(arr)
            for i, rv in enumerate(arr):
                x = elliptic.complement(float(rv))
                c = means.contraharmonic(*means.blend(p, 1.0, x))
                out[i] = HALF_PI * (c - alpha * means.arithmetic(1.0, x)) / (1.0 - alpha)
            return float(out[0]) if np.ndim(r) == 0 else out.reshape(np.shape(r))
        return bound

    return BoundEnvelope("theorem31", side(lam), side(mu), True,
                         f"alpha={alpha}, lambda={lam}, mu={mu}")


def tighter_points(first, second, r):
    """Masks of r where ``first``'s lower (resp. upper) bound is strictly
    tighter than ``second``'s."""
    arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    a, b = envelope(first), envelope(second)
    lo_a, lo_b = np.asarray(a.lower(arr)), np.asarray(b.lower(arr))
    hi_a, hi_b = np.asarray(a.upper(arr)), np.asarray(b.upper(arr))
    tol = 1e-15 * np.abs(elliptic.grid(arr).E)
    return lo_a - lo_b > tol, hi_b - hi_a > tol


def dominance_margins(r, other):
    """corollary33 lower bound minus the lower bound of ``other``, with scale.

    Uses the exact series difference for r <= 0.3.
    """
    arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    mine = envelope("corollary33")
    theirs = envelope(other)
    a = np.asarray(mine.lower(arr))
    b = np.asarray(theirs.lower(arr))
    margin = a - b
    scale = np.maximum(np.abs(a), np.abs(b))
    near = arr <= SERIES_CUT
    if near.any() and theirs.lower_series is not None:
        pi_c = ps.sub(mine.lower_series[0], theirs.lower_series[0])
        rat_c = ps.sub(mine.lower_series[1], theirs.lower_series[1])
        margin[near], scale[near] = ps.evaluate(pi_c, rat_c, arr[near] ** 2)
    if np.ndim(r) == 0:
        return float(margin[0]), float(scale[0])
    return margin, scale


# --- polynomial identities behind the dominance claims -------------------

def _exact(x):
    return Fraction(float(x))


def remark2_identity(x):
    """(3x^2 + 2x + 3)^2 - 8(1 + x^2)(1 + x)^2, evaluated exactly; equals (1 - x)^4."""
    q = _exact(x)
    return float((3 * q * q + 2 * q + 3) ** 2 - 8 * (1 + q * q) * (1 + q) ** 2)


def remark3_identity(x):
    """(5x^2 + 6x + 5)^2 - 8(x + 1)^2(3x^2 + 2x + 3), evaluated exactly; equals (x - 1)^4."""
    q = _exact(x)
    return float((5 * q * q + 6 * q + 5) ** 2 - 8 * (q + 1) ** 2 * (3 * q * q + 2 * q + 3))
