"""Legendre complete elliptic integrals K(r), E(r) and related combinations.

Values come from the arithmetic-geometric mean (AGM); the ``*_oracle``
functions integrate the defining integrals by adaptive Simpson quadrature
and share no code with the AGM path.  Combinations that cancel as r -> 0
(``E - r'^2 K``, ``K - E``, ``2E - r'^2 K - pi/2``) switch to their exact
Maclaurin series for r <= 0.25.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from ._core import kernels
from .errors import ConvergenceError, DomainError

HALF_PI = 0.5 * math.pi
ORACLE_TOL = 1e-13
ORACLE_MAX_PANELS = 10**6


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus r in [0, 1]; the complement r' is derived on demand."""

    r: float

    def __post_init__(self):
        r = float(self.r)
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"modulus must lie in [0, 1], got {self.r!r}")
        object.__setattr__(self, "r", r)

    @property
    def r_comp(self) -> float:
        return complement(self.r)

    def __float__(self):
        return self.r


ModulusLike = Union[Modulus, float]


class Method(enum.Enum):
    AGM = "agm"
    QUADRATURE = "quadrature"


class EllipticValue(float):
    """A float that remembers how it was evaluated."""

    method: Method

    def __new__(cls, value, method=Method.AGM):
        obj = super().__new__(cls, value)
        obj.method = method
        return obj

    def __repr__(self):
        return f"EllipticValue({float(self)!r}, method={self.method.value})"

    __str__ = float.__repr__


class EllipticGrid(NamedTuple):
    """Vectorised evaluations on an array of moduli."""

    r: np.ndarray
    K: np.ndarray
    E: np.ndarray
    e_minus_rc2k: np.ndarray
    landen_excess: np.ndarray
    k_minus_e: np.ndarray


def complement(r):
    """r' = sqrt(1 - r^2), computed as sqrt((1 - r)(1 + r))."""
    if isinstance(r, np.ndarray):
        return np.sqrt((1.0 - r) * (1.0 + r))
    return math.sqrt((1.0 - r) * (1.0 + r))


def _modulus(m, *, open_left=False, open_right=False) -> float:
    r = float(m)
    if not 0.0 <= r <= 1.0:  # also rejects nan
        raise DomainError(f"modulus must lie in [0, 1], got {r!r}")
    if open_left and r == 0.0:
        raise DomainError("r = 0 is excluded here")
    if open_right and r == 1.0:
        raise DomainError("r = 1 is excluded here")
    return r


def _combos(r):
    return kernels.combos(r, complement(r))


def ell_k(m: ModulusLike) -> EllipticValue:
    """K(r) by the AGM: ``pi / (2 agm(1, r'))``.

    Raises DomainError at the pole r = 1.
    """
    r = _modulus(m)
    if r == 1.0:
        raise DomainError("K has a logarithmic pole at r = 1")
    return EllipticValue(kernels.agm(r, complement(r))[0])


def ell_e(m: ModulusLike) -> EllipticValue:
    """E(r) from the AGM companion series; E(1) = 1."""
    r = _modulus(m)
    if r == 1.0:
        return EllipticValue(1.0)
    return EllipticValue(kernels.agm(r, complement(r))[1])


def _oracle(kind, r, tol):
    if not 0.0 < tol <= 1e-6:
        raise DomainError(f"oracle tolerance must lie in (0, 1e-6], got {tol!r}")
    values, errors, panels, status = kernels.simpson_batch(
        kind, np.ones(1), np.array([(1.0 - r) * (1.0 + r)]), tol, ORACLE_MAX_PANELS)
    if status[0] != 0:
        raise ConvergenceError(
            f"adaptive Simpson stopped after {panels[0]} panels at r={r!r} "
            f"(error estimate {errors[0]:.3g}, tol {tol:.3g})")
    return EllipticValue(values[0], Method.QUADRATURE)


def ell_k_oracle(m: ModulusLike, tol: float = ORACLE_TOL) -> EllipticValue:
    """K(r) by adaptive Simpson quadrature of the defining integral."""
    return _oracle(0, _modulus(m, open_right=True), tol)


def ell_e_oracle(m: ModulusLike, tol: float = ORACLE_TOL) -> EllipticValue:
    """E(r) by adaptive Simpson quadrature of the defining integral."""
    return _oracle(1, _modulus(m), tol)


def oracle_grid(r, kind: str, tol: float = ORACLE_TOL) -> np.ndarray:
    """Quadrature values of K (``kind="K"``) or E (``kind="E"``) on an array."""
    r = np.asarray(r, dtype=np.float64)
    if kind not in ("K", "E"):
        raise ValueError(f"kind must be 'K' or 'E', got {kind!r}")
    if not 0.0 < tol <= 1e-6:
        raise DomainError(f"oracle tolerance must lie in (0, 1e-6], got {tol!r}")
    if np.any((r < 0.0) | (r > 1.0)) or (kind == "K" and np.any(r == 1.0)):
        raise DomainError("modulus outside the domain of the oracle")
    values, errors, panels, status = kernels.simpson_batch(
        0 if kind == "K" else 1, np.ones_like(r), (1.0 - r) * (1.0 + r), tol,
        ORACLE_MAX_PANELS)
    if np.any(status != 0):
        bad = int(np.argmax(status != 0))
        raise ConvergenceError(f"adaptive Simpson failed at r={r.flat[bad]!r}")
    return values.reshape(r.shape)


def comp_k(m: ModulusLike) -> EllipticValue:
    """K'(r) = K(r')."""
    r = _modulus(m)
    if r == 0.0:
        raise DomainError("K'(0) = K(1) is infinite")
    return ell_k(complement(r))


def comp_e(m: ModulusLike) -> EllipticValue:
    """E'(r) = E(r')."""
    return ell_e(complement(_modulus(m)))


def d_ell_k(m: ModulusLike) -> float:
    """dK/dr = (E - r'^2 K) / (r r'^2) on (0, 1)."""
    r = _modulus(m, open_left=True, open_right=True)
    p1 = _combos(r)[2]
    return p1 / (r * (1.0 - r) * (1.0 + r))


def d_ell_e(m: ModulusLike) -> float:
    """dE/dr = (E - K) / r on (0, 1)."""
    r = _modulus(m, open_left=True, open_right=True)
    return -_combos(r)[4] / r


def k_minus_e(m: ModulusLike) -> float:
    r = _modulus(m, open_right=True)
    return _combos(r)[4]


def d_k_minus_e(m: ModulusLike) -> float:
    """d(K - E)/dr = r E / r'^2 on (0, 1)."""
    r = _modulus(m, open_left=True, open_right=True)
    return r * ell_e(r) / ((1.0 - r) * (1.0 + r))


def e_minus_rc2k(m: ModulusLike) -> float:
    """E - r'^2 K; its r-derivative is r K.  Returns the limit 1 at r = 1."""
    return _combos(_modulus(m))[2]


def lemma21_ratio(m: ModulusLike) -> float:
    """(E - r'^2 K) / r^2, increasing from pi/4 to 1 on (0, 1)."""
    r = _modulus(m, open_left=True)
    return _combos(r)[2] / (r * r)


def two_e_minus_rc2k(m: ModulusLike) -> float:
    """2E - r'^2 K, increasing from pi/2 to 2 on (0, 1)."""
    return HALF_PI + landen_excess(m)


def landen_excess(m: ModulusLike) -> float:
    """2E - r'^2 K - pi/2 without cancellation near r = 0."""
    return _combos(_modulus(m))[3]


def landen_rhs(m: ModulusLike) -> float:
    """(2E - r'^2 K) / (1 + r), which equals E(2 sqrt(r) / (1 + r))."""
    r = _modulus(m)
    return (HALF_PI + _combos(r)[3]) / (1.0 + r)


def landen_modulus(m: ModulusLike) -> float:
    """The transformed modulus 2 sqrt(r) / (1 + r)."""
    r = _modulus(m)
    return min(1.0, 2.0 * math.sqrt(r) / (1.0 + r))


def grid(r) -> EllipticGrid:
    """Evaluate K, E and the cancellation-free combinations on an array.

    At r = 1 the limits are returned (K = inf, E = 1, E - r'^2 K = 1).
    """
    r = np.asarray(r, dtype=np.float64)
    if np.any(~((r >= 0.0) & (r <= 1.0))):
        raise DomainError("modulus must lie in [0, 1]")
    k, e, p1, p2, p3 = kernels.combos_array(r, complement(r))
    return EllipticGrid(r, k, e, p1, p2, p3)
