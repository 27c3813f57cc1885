"""Pure-Python/numpy implementations of the hot kernels.

Mirrors ``_ckernels.pyx`` function for function; selected by ``_core`` when
the compiled module is unavailable.
"""
import math

import numpy as np

from ._coeffs import SERIES_R_MAX, combo_coefficients_float

HALF_PI = 0.5 * math.pi
AGM_TOL = 5e-17  # on c_n, i.e. |a_n - b_n| < 1e-16 * a_n
AGM_MAX_ITER = 64

OK, BUDGET_EXCEEDED, WIDTH_UNDERFLOW = 0, 1, 2

_P1, _P2, _P3 = combo_coefficients_float()

BACKEND = "python"


def _horner(coeffs, y):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc * y


def agm(r, rc):
    """Return ``(K, E)`` at modulus ``r`` with complement ``rc``; needs rc > 0."""
    a, b, c = 1.0, rc, r
    pw = 0.5
    s = 0.5 * c * c
    it = 0
    while c > AGM_TOL * a and it < AGM_MAX_ITER:
        an = 0.5 * (a + b)
        b = math.sqrt(a * b)
        a = an
        c = c * c / (4.0 * a)
        pw *= 2.0
        s += pw * c * c
        it += 1
    k = HALF_PI / a
    return k, k * (1.0 - s)


def combos(r, rc):
    """Return ``(K, E, E - rc^2 K, 2E - rc^2 K - pi/2, K - E)``.

    At r == 1 the limits are returned with K = inf.
    """
    if rc == 0.0:
        return math.inf, 1.0, 1.0, 2.0 - HALF_PI, math.inf
    k, e = agm(r, rc)
    if r <= SERIES_R_MAX:
        y = r * r
        return (k, e, HALF_PI * _horner(_P1, y), HALF_PI * _horner(_P2, y),
                HALF_PI * _horner(_P3, y))
    rc2k = rc * rc * k
    return k, e, e - rc2k, (2.0 * e - rc2k) - HALF_PI, k - e


def combos_array(r, rc):
    r = np.ascontiguousarray(r, dtype=np.float64)
    rc = np.ascontiguousarray(rc, dtype=np.float64)
    at_one = rc == 0.0
    rc_safe = np.where(at_one, 1.0, rc)
    r_safe = np.where(at_one, 0.0, r)

    a = np.ones_like(r)
    b = rc_safe.copy()
    c = r_safe.copy()
    s = 0.5 * c * c
    pw = 0.5
    active = c > AGM_TOL * a
    for _ in range(AGM_MAX_ITER):
        if not active.any():
            break
        an = 0.5 * (a + b)
        bn = np.sqrt(a * b)
        cn = c * c / (4.0 * an)
        a = np.where(active, an, a)
        b = np.where(active, bn, b)
        c = np.where(active, cn, c)
        pw *= 2.0
        s = np.where(active, s + pw * c * c, s)
        active &= c > AGM_TOL * a
    k = HALF_PI / a
    e = k * (1.0 - s)

    rc2k = rc_safe * rc_safe * k
    p1 = e - rc2k
    p2 = (2.0 * e - rc2k) - HALF_PI
    p3 = k - e
    small = r_safe <= SERIES_R_MAX
    if small.any():
        y = r_safe[small] ** 2
        for out, coeffs in ((p1, _P1), (p2, _P2), (p3, _P3)):
            acc = np.zeros_like(y)
            for cf in reversed(coeffs):
                acc = acc * y + cf
            out[small] = HALF_PI * (acc * y)

    if at_one.any():
        k[at_one] = np.inf
        e[at_one] = 1.0
        p1[at_one] = 1.0
        p2[at_one] = 2.0 - HALF_PI
        p3[at_one] = np.inf
    return k, e, p1, p2, p3


def _integrand(kind, theta, p, q):
    c = np.cos(theta)
    s = np.sin(theta)
    w = p * c * c + q * s * s
    return 1.0 / np.sqrt(w) if kind == 0 else np.sqrt(w)


def simpson_batch(kind, p, q, tol, max_panels):
    """Adaptive Simpson over [0, pi/2] of ``(p cos^2 + q sin^2)^(-1/2)``
    (kind 0) or ``^(1/2)`` (kind 1), one integral per (p[i], q[i]).

    Panels are refined level by level; a panel is accepted when the
    Richardson difference is within 15x its share of ``tol``.  Returns
    ``(values, error_estimates, panel_counts, status)``.
    """
    p = np.ascontiguousarray(p, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    n = p.size
    result = np.zeros(n)
    err = np.zeros(n)
    panels = np.ones(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)

    owner = np.arange(n)
    lo = np.zeros(n)
    hi = np.full(n, HALF_PI)
    mid = 0.5 * (lo + hi)
    fa = _integrand(kind, lo, p, q)
    fm = _integrand(kind, mid, p, q)
    fb = _integrand(kind, hi, p, q)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    ptol = np.full(n, float(tol))

    while owner.size:
        po, qo = p[owner], q[owner]
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = _integrand(kind, lm, po, qo)
        frm = _integrand(kind, rm, po, qo)
        left = (mid - lo) / 6.0 * (fa + 4.0 * flm + fm)
        right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole

        ok = np.abs(delta) <= 15.0 * ptol
        np.add.at(result, owner[ok], left[ok] + right[ok] + delta[ok] / 15.0)
        np.add.at(err, owner[ok], np.abs(delta[ok]) / 15.0)

        split = ~ok
        degenerate = split & ((lm <= lo) | (lm >= mid) | (rm <= mid) | (rm >= hi))
        if degenerate.any():
            status[owner[degenerate]] = WIDTH_UNDERFLOW
        np.add.at(panels, owner[split], 1)
        split &= status[owner] == OK
        over = split & (panels[owner] > max_panels)
        if over.any():
            status[owner[over]] = BUDGET_EXCEEDED
            split &= status[owner] == OK

        so = owner[split]
        owner = np.concatenate([so, so])
        lo, mid, hi = (np.concatenate([lo[split], mid[split]]),
                       np.concatenate([lm[split], rm[split]]),
                       np.concatenate([mid[split], hi[split]]))
        fa, fm, fb = (np.concatenate([fa[split], fm[split]]),
                      np.concatenate([flm[split], frm[split]]),
                      np.concatenate([fm[split], fb[split]]))
        whole = np.concatenate([left[split], right[split]])
        ptol = np.concatenate([ptol[split], ptol[split]]) * 0.5
        if owner.size:
            # drop panels whose owner already failed
            keep = status[owner] == OK
            if not keep.all():
                owner, lo, mid, hi = owner[keep], lo[keep], mid[keep], hi[keep]
                fa, fm, fb = fa[keep], fm[keep], fb[keep]
                whole, ptol = whole[keep], ptol[keep]
    return result, err, panels, status
