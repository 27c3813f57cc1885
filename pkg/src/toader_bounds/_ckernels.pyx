# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: AGM evaluation of K and E, their cancellation-free
combinations, and the batched adaptive Simpson oracle.

Function-for-function twin of ``_pykernels``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, sin, cos, fabs, INFINITY, M_PI

from ._coeffs import SERIES_R_MAX as _SERIES_R_MAX, N_TERMS as _N_TERMS
from ._coeffs import combo_coefficients_float

cnp.import_array()

BACKEND = "cython"

cdef enum:
    NMAX = 64
    STACK = 256

cdef double HALF_PI = 0.5 * M_PI
cdef double AGM_TOL = 5e-17
cdef int AGM_MAX_ITER = 64
cdef double SERIES_R_MAX = _SERIES_R_MAX
cdef int NT = _N_TERMS
cdef double P1[NMAX]
cdef double P2[NMAX]
cdef double P3[NMAX]

_c1, _c2, _c3 = combo_coefficients_float()
for _i in range(NT):
    P1[_i] = _c1[_i]
    P2[_i] = _c2[_i]
    P3[_i] = _c3[_i]

OK = 0
BUDGET_EXCEEDED = 1
WIDTH_UNDERFLOW = 2


cdef inline double _horner(double* coeffs, double y) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(NT - 1, -1, -1):
        acc = acc * y + coeffs[i]
    return acc * y


cdef inline void _agm(double r, double rc, double* k, double* e) noexcept nogil:
    cdef double a = 1.0, b = rc, c = r, an
    cdef double pw = 0.5
    cdef double s = 0.5 * c * c
    cdef int it = 0
    while c > AGM_TOL * a and it < AGM_MAX_ITER:
        an = 0.5 * (a + b)
        b = sqrt(a * b)
        a = an
        c = c * c / (4.0 * a)
        pw *= 2.0
        s += pw * c * c
        it += 1
    k[0] = HALF_PI / a
    e[0] = k[0] * (1.0 - s)


cdef inline void _combos(double r, double rc, double* out) noexcept nogil:
    cdef double k, e, y, rc2k
    if rc == 0.0:
        out[0] = INFINITY
        out[1] = 1.0
        out[2] = 1.0
        out[3] = 2.0 - HALF_PI
        out[4] = INFINITY
        return
    _agm(r, rc, &k, &e)
    out[0] = k
    out[1] = e
    if r <= SERIES_R_MAX:
        y = r * r
        out[2] = HALF_PI * _horner(P1, y)
        out[3] = HALF_PI * _horner(P2, y)
        out[4] = HALF_PI * _horner(P3, y)
    else:
        rc2k = rc * rc * k
        out[2] = e - rc2k
        out[3] = (2.0 * e - rc2k) - HALF_PI
        out[4] = k - e


def agm(double r, double rc):
    """Return ``(K, E)`` at modulus ``r`` with complement ``rc``; needs rc > 0."""
    cdef double k, e
    _agm(r, rc, &k, &e)
    return k, e


def combos(double r, double rc):
    cdef double out[5]
    _combos(r, rc, out)
    return out[0], out[1], out[2], out[3], out[4]


def combos_array(r, rc):
    shape = np.shape(r)
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64).ravel()
    cdef double[::1] cv = np.ascontiguousarray(rc, dtype=np.float64).ravel()
    cdef Py_ssize_t n = rv.shape[0], i
    res = np.empty((5, n), dtype=np.float64)
    cdef double[:, ::1] resv = res
    cdef double out[5]
    with nogil:
        for i in range(n):
            _combos(rv[i], cv[i], out)
            resv[0, i] = out[0]
            resv[1, i] = out[1]
            resv[2, i] = out[2]
            resv[3, i] = out[3]
            resv[4, i] = out[4]
    return tuple(res[j].reshape(shape) for j in range(5))


cdef inline double _integrand(int kind, double theta, double p, double q) noexcept nogil:
    cdef double c = cos(theta), s = sin(theta)
    cdef double w = p * c * c + q * s * s
    if kind == 0:
        return 1.0 / sqrt(w)
    return sqrt(w)


cdef int _simpson(int kind, double p, double q, double tol, long max_panels,
                  double* value, double* error, long* panels) noexcept nogil:
    # depth-first, left child first; stack rows: lo, mid, hi, fa, fm, fb, whole, tol
    cdef double st[STACK][8]
    cdef int top = 0
    cdef double lo, mid, hi, fa, fm, fb, whole, ptol, lm, rm, flm, frm, left, right, delta
    cdef double total = 0.0, err = 0.0
    cdef long count = 1
    lo = 0.0
    hi = HALF_PI
    mid = 0.5 * (lo + hi)
    st[0][0] = lo
    st[0][1] = mid
    st[0][2] = hi
    st[0][3] = _integrand(kind, lo, p, q)
    st[0][4] = _integrand(kind, mid, p, q)
    st[0][5] = _integrand(kind, hi, p, q)
    st[0][6] = (hi - lo) / 6.0 * (st[0][3] + 4.0 * st[0][4] + st[0][5])
    st[0][7] = tol
    top = 1
    while top > 0:
        top -= 1
        lo = st[top][0]
        mid = st[top][1]
        hi = st[top][2]
        fa = st[top][3]
        fm = st[top][4]
        fb = st[top][5]
        whole = st[top][6]
        ptol = st[top][7]
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = _integrand(kind, lm, p, q)
        frm = _integrand(kind, rm, p, q)
        left = (mid - lo) / 6.0 * (fa + 4.0 * flm + fm)
        right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if fabs(delta) <= 15.0 * ptol:
            total += left + right + delta / 15.0
            err += fabs(delta) / 15.0
            continue
        if lm <= lo or lm >= mid or rm <= mid or rm >= hi or top + 2 > STACK:
            value[0] = total
            error[0] = err
            panels[0] = count
            return 2
        count += 1
        if count > max_panels:
            value[0] = total
            error[0] = err
            panels[0] = count
            return 1
        # push right child first so the left one is processed next
        st[top][0] = mid
        st[top][1] = rm
        st[top][2] = hi
        st[top][3] = fm
        st[top][4] = frm
        st[top][5] = fb
        st[top][6] = right
        st[top][7] = 0.5 * ptol
        top += 1
        st[top][0] = lo
        st[top][1] = lm
        st[top][2] = mid
        st[top][3] = fa
        st[top][4] = flm
        st[top][5] = fm
        st[top][6] = left
        st[top][7] = 0.5 * ptol
        top += 1
    value[0] = total
    error[0] = err
    panels[0] = count
    return 0


def simpson_batch(int kind, p, q, double tol, long max_panels):
    """Adaptive Simpson over [0, pi/2] of ``(p cos^2 + q sin^2)^(-1/2)``
    (kind 0) or ``^(1/2)`` (kind 1), one integral per (p[i], q[i]).
    Returns ``(values, error_estimates, panel_counts, status)``.
    """
    cdef double[:] pv = np.ascontiguousarray(p, dtype=np.float64).ravel()
    cdef double[:] qv = np.ascontiguousarray(q, dtype=np.float64).ravel()
    cdef Py_ssize_t n = pv.shape[0], i
    values = np.zeros(n)
    errors = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)
    cdef double[:] vv = values
    cdef double[:] ev = errors
    cdef cnp.int64_t[:] cv = counts
    cdef cnp.int64_t[:] sv = status
    cdef double val, er
    cdef long cnt
    with nogil:
        for i in range(n):
            sv[i] = _simpson(kind, pv[i], qv[i], tol, max_panels, &val, &er, &cnt)
            vv[i] = val
            ev[i] = er
            cv[i] = cnt
    return values, errors, counts, status
