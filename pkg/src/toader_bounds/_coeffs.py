"""Exact Maclaurin coefficients of K, E and their combinations in y = r**2.

All series are in units of pi/2, e.g. ``E(r) = (pi/2) * sum(e[n] * y**n)``.
"""
from fractions import Fraction
from functools import lru_cache

N_TERMS = 24
# Series path is used for r <= SERIES_R_MAX (y <= 1/16); truncation < 1e-18.
SERIES_R_MAX = 0.25


@lru_cache(maxsize=None)
def k_coefficients(n_terms=N_TERMS):
    out = [Fraction(1)]
    for n in range(1, n_terms + 1):
        out.append(out[-1] * Fraction(2 * n - 1, 2 * n) ** 2)
    return tuple(out)


@lru_cache(maxsize=None)
def e_coefficients(n_terms=N_TERMS):
    out = [Fraction(1)]
    for n in range(1, n_terms + 1):
        out.append(out[-1] * Fraction((2 * n - 1) * (2 * n - 3), 4 * n * n))
    return tuple(out)


@lru_cache(maxsize=None)
def combo_coefficients(n_terms=N_TERMS):
    """Coefficients (index 0 .. n_terms-1 <-> y**1 .. y**n_terms) of

    E - r'^2 K,  2E - r'^2 K - pi/2,  K - E,

    each divided by pi/2.  None of them has a constant term.
    """
    k = k_coefficients(n_terms)
    e = e_coefficients(n_terms)
    p1 = tuple(e[n] - k[n] + k[n - 1] for n in range(1, n_terms + 1))
    p2 = tuple(2 * e[n] - k[n] + k[n - 1] for n in range(1, n_terms + 1))
    p3 = tuple(k[n] - e[n] for n in range(1, n_terms + 1))
    return p1, p2, p3


def combo_coefficients_float(n_terms=N_TERMS):
    return tuple(tuple(float(c) for c in seq) for seq in combo_coefficients(n_terms))
