"""Numerical recovery of the threshold structure of f_{u,alpha}.

For fixed alpha the sign pattern of f_{u,alpha} on (0, 1) is all-negative
for u <= (1-alpha)/4, all-positive for u >= (1-alpha)(4/pi - 1), and a
single + to - crossing in between.  The functions here classify u on a
graded r grid, bisect for both thresholds, locate the crossing point and
search for counterexamples to non-sharp blend constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import bounds, means
from .errors import DomainError, RegimeError, SearchError, StructureError

NEGATIVE, CROSSING, POSITIVE = "negative", "crossing", "positive"
# below this multiple of the term size a sample is treated as sign-less
SIGN_NOISE = 1e-15


@dataclass(frozen=True)
class ThresholdEstimate:
    alpha: float
    u_low: float
    u_high: float
    tolerance: float

    @property
    def target_low(self):
        return bounds.lower_threshold(self.alpha)

    @property
    def target_high(self):
        return bounds.upper_threshold(self.alpha)


@dataclass(frozen=True)
class Witness:
    r: float
    value: float
    side: str

    @property
    def pair(self):
        """A pair (1, t) whose Landen modulus is ``r``."""
        return 1.0, means.modulus_to_ratio(self.r)


@lru_cache(maxsize=16)
def graded_grid(n=2000, edge=1e-7):
    """Sorted r grid on (0, 1): geometric towards both endpoints down to
    ``edge``, uniform in [0.1, 0.9]."""
    if n < 10:
        raise DomainError("grid needs at least 10 points")
    n_geo = n // 4
    n_mid = n - 2 * n_geo
    near0 = np.geomspace(edge, 0.1, n_geo, endpoint=False)
    mid = np.linspace(0.1, 0.9, n_mid)
    near1 = 1.0 - np.geomspace(0.1, edge, n_geo + 1)[1:]
    grid = np.unique(np.concatenate([near0, mid, near1]))
    grid.setflags(write=False)
    return grid


def sign_pattern(u, alpha, r):
    """Signs of f_{u,alpha} on ``r``, with 0 where it is below rounding noise."""
    value, size = bounds.f_terms(u, alpha, r)
    sign = np.sign(value).astype(np.int8)
    sign[np.abs(value) <= SIGN_NOISE * size] = 0
    return sign


def classify(u, alpha, r):
    """Classify u as NEGATIVE, POSITIVE or CROSSING (+ then -) on the grid."""
    s = sign_pattern(u, alpha, r)
    s = s[s != 0]
    if s.size == 0:
        raise StructureError(f"f is at rounding level everywhere for u={u!r}")
    if np.all(s < 0):
        return NEGATIVE
    if np.all(s > 0):
        return POSITIVE
    changes = np.flatnonzero(np.diff(s))
    if changes.size == 1 and s[0] > 0:
        return CROSSING
    raise StructureError(
        f"sign pattern of f_(u={u!r}, alpha={alpha!r}) has {changes.size} changes "
        f"starting {'+' if s[0] > 0 else '-'}")


def _bisect(pred, lo, hi, tol):
    # invariant: pred(lo) is False, pred(hi) is True; stops on width
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def estimate_thresholds(alpha, grid_n=2000, tol=1e-7) -> ThresholdEstimate:
    """Bisect on u for the largest all-negative and smallest all-positive u.

    alpha may be 0 (T alone); alpha = 1 is rejected since f then has no
    threshold structure.
    """
    alpha = bounds._alpha(alpha, closed=True)
    if alpha == 1.0:
        raise DomainError("alpha = 1 leaves no thresholds to estimate")
    if grid_n < 1000:
        raise DomainError("grid_n must be at least 1000")
    if not 0.0 < tol <= 1e-6:
        raise DomainError("tol must lie in (0, 1e-6]")
    r = graded_grid(grid_n)
    lo, hi = _bisect(lambda u: classify(u, alpha, r) != NEGATIVE, 0.0, 1.0, tol)
    u_low = 0.5 * (lo + hi)
    lo, hi = _bisect(lambda u: classify(u, alpha, r) == POSITIVE, 0.0, 1.0, tol)
    u_high = 0.5 * (lo + hi)
    return ThresholdEstimate(alpha, u_low, u_high, tol)


def sign_change_point(g: bounds.GapParams, tol=1e-12):
    """The root eta of f_{u,alpha} in the intermediate regime.

    f > 0 on (0, eta) and f < 0 on (eta, 1).  Bisection on r stops once the
    bracket is narrower than ``tol * (1 - alpha) / 4``; since |f'| <= 2(1 - alpha)
    there, |f(eta)| <= tol * (1 - alpha).
    """
    u, alpha = float(g.u), bounds._alpha(g.alpha, closed=True)
    if not bounds.lower_threshold(alpha) < u < bounds.upper_threshold(alpha):
        raise RegimeError(
            f"u={u!r} is outside ((1-alpha)/4, (1-alpha)(4/pi-1)) for alpha={alpha!r}")
    r = graded_grid(4000)
    s = sign_pattern(u, alpha, r)
    pos = np.flatnonzero(s > 0)
    neg = np.flatnonzero(s < 0)
    if pos.size == 0 or neg.size == 0 or pos[-1] > neg[0]:
        raise StructureError(f"no clean + to - bracket for u={u!r}, alpha={alpha!r}")
    lo, hi = float(r[pos[-1]]), float(r[neg[0]])
    width = tol * (1.0 - alpha) / 4.0
    lo, hi = _bisect(lambda x: bounds.f_u_alpha(u, alpha, x) < 0.0, lo, hi, width)
    return 0.5 * (lo + hi)


def witness_grid(n=100_000, edge=1e-7):
    """Graded scan grid with ``n`` points (geometric near both ends)."""
    return graded_grid(n, edge)


def find_violation_witness(alpha, interp, side, n=100_000, min_gap=1e-12) -> Witness:
    """First r in scan order where the double inequality fails for ``interp``.

    ``side="lower"`` tests C(interp-blend) < alpha A + (1-alpha) T and scans
    upward from r -> 0; ``side="upper"`` tests the reverse inequality and scans
    downward from r -> 1.  The witness value is the reduced gap at the pair
    (1, (1-r)/(1+r)) and exceeds ``min_gap`` in the violating direction.
    """
    alpha = bounds._alpha(alpha)
    if side not in ("lower", "upper"):
        raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")
    if not 0.5 < interp < 1.0:
        raise DomainError(f"interp must lie in (1/2, 1), got {interp!r}")
    r = witness_grid(n)
    if side == "upper":
        r = r[::-1]
    u = bounds.interp_to_u(interp)
    value, size = bounds.f_terms(u, alpha, r)
    gap = value / (1.0 + r)  # A = 1/(1 + r) for the pair (1, t)
    if side == "lower":
        bad = (gap > min_gap) & (value > SIGN_NOISE * size)
    else:
        bad = (gap < -min_gap) & (-value > SIGN_NOISE * size)
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        raise SearchError(
            f"no {side} violation for interp={interp!r}, alpha={alpha!r} on {r.size} points")
    i = int(hits[0])
    return Witness(float(r[i]), float(gap[i]), side)


def perturbation_witnesses(alpha, eps, n=100_000):
    """Witnesses against lambda_star + eps and mu_star - eps."""
    lo = find_violation_witness(alpha, bounds.lambda_star(alpha) + eps, "lower", n)
    hi = find_violation_witness(alpha, bounds.mu_star(alpha) - eps, "upper", n)
    return lo, hi


def crossing_direction_ok(u, alpha, eta, delta=0.01):
    """f > 0 just left of eta and f < 0 just right of it."""
    left = eta - delta if eta - delta > 0.0 else 0.5 * eta
    right = eta + delta if eta + delta < 1.0 else 0.5 * (1.0 + eta)
    return bounds.f_u_alpha(u, alpha, left) > 0.0 > bounds.f_u_alpha(u, alpha, right)


def describe(est: ThresholdEstimate) -> str:
    lines = [
        f"alpha        = {est.alpha:.16g}",
        f"u_low        = {est.u_low:.16g}   target (1-alpha)/4        = {est.target_low:.16g}   "
        f"|dev| = {abs(est.u_low - est.target_low):.3e}",
        f"u_high       = {est.u_high:.16g}   target (1-alpha)(4/pi-1)  = {est.target_high:.16g}   "
        f"|dev| = {abs(est.u_high - est.target_high):.3e}",
        f"lambda*      = {bounds.lambda_star(est.alpha):.16g}",
        f"mu*          = {bounds.mu_star(est.alpha):.16g}",
    ]
    return "\n".join(lines)

