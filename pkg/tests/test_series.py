from fractions import Fraction

import pytest

from toader_bounds import _series as ps
from toader_bounds._coeffs import combo_coefficients, e_coefficients, k_coefficients


def test_known_coefficients():
    assert k_coefficients(3) == (1, Fraction(1, 4), Fraction(9, 64), Fraction(25, 256))
    assert e_coefficients(2) == (1, Fraction(-1, 4), Fraction(-3, 64))
    p1, p2, p3 = combo_coefficients(3)
    # T/A - 1 = r^2/4 + r^4/64 + r^6/256 + ...
    assert p2 == (Fraction(1, 4), Fraction(1, 64), Fraction(1, 256))
    assert p1[0] == Fraction(1, 2) and p3[0] == Fraction(1, 2)


def test_series_algebra():
    x = ps.complement()
    assert ps.mul(x, x) == ps.sub(ps.const(1), ps.y())
    a = ps.add(ps.const(1), ps.scale(ps.y(), 3))
    assert ps.mul(a, ps.inv(a)) == ps.const(1)
    assert ps.power(a, 2) == ps.mul(a, a)
    assert ps.power(a, Fraction(1, 2)) == ps.sqrt(a)
    assert ps.div(a, a) == ps.const(1)


def test_series_errors():
    with pytest.raises(ZeroDivisionError):
        ps.inv(ps.y())
    with pytest.raises(ValueError):
        ps.sqrt(ps.const(2))
    with pytest.raises(ValueError):
        ps.power(ps.const(2), 3)


def test_evaluate_scalar_and_size():
    total, size = ps.evaluate(ps.const(0), ps.sub(ps.const(1), ps.y()), 0.25)
    assert total == 0.75 and size == 1.25
