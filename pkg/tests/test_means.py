import math

import numpy as np
import pytest
from scipy import integrate

from toader_bounds import means
from toader_bounds.errors import DomainError

# T(2, 1): AGM, the Simpson oracle and scipy quad agree to 4e-16
T_2_1 = 1.54196442519004


def _toader_scipy(a, b):
    f = lambda t: math.sqrt(a * a * math.cos(t) ** 2 + b * b * math.sin(t) ** 2)
    return 2 / math.pi * integrate.quad(f, 0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]


def test_frozen_toader():
    assert means.toader(2, 1) == pytest.approx(T_2_1, abs=1e-15)
    assert means.toader_oracle(2, 1) == pytest.approx(T_2_1, abs=1e-13)
    assert _toader_scipy(2, 1) == pytest.approx(T_2_1, abs=1e-14)


@pytest.mark.parametrize("a,b", [(1, 1e-3), (1e-3, 1e3), (7, 3), (1, 0.999999)])
def test_toader_matches_quadrature(a, b):
    assert means.toader(a, b) == pytest.approx(means.toader_oracle(a, b), rel=1e-12)
    if max(a, b) / min(a, b) < 1e3:
        assert means.toader(a, b) == pytest.approx(_toader_scipy(a, b), rel=1e-12)


def test_toader_extreme_ratio_high_precision():
    # scipy's quad loses ~1e-11 relative here; mpmath's closed form does not
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    want = 2 / mp.pi * 1000 * mp.ellipe(1 - mp.mpf("1e-6") ** 2)
    assert means.toader(1e-3, 1e3) == pytest.approx(float(want), rel=1e-15)


def test_equal_arguments():
    for fn in (means.arithmetic, means.contraharmonic, means.toader):
        assert fn(3, 3) == 3
    assert means.power_mean(3, 3, 1.5) == 3
    assert means.power_mean(3, 3, 0) == 3
    assert means.j_interp(0.7, 3, 3) == 3


def test_simple_values():
    assert means.arithmetic(2, 1) == 1.5
    assert means.contraharmonic(2, 1) == pytest.approx(5 / 3, abs=1e-16)
    assert means.power_mean(4, 1, 0) == 2
    assert means.power_mean(4, 1, 1) == pytest.approx(2.5, abs=1e-15)
    assert means.power_mean(4, 1, 2) == pytest.approx(math.sqrt(8.5), abs=1e-15)
    assert means.power_mean(4, 1, -1) == pytest.approx(1.6, abs=1e-15)


def test_power_mean_extreme_exponents():
    assert means.power_mean(1e3, 1e-3, 500) == pytest.approx(1e3 * 0.5 ** (1 / 500), rel=1e-14)
    assert means.power_mean(1e3, 1e-3, -500) == pytest.approx(1e-3 * 0.5 ** (-1 / 500), rel=1e-14)
    assert means.power_mean(5, 2, 1e-12) == pytest.approx(math.sqrt(10), rel=1e-11)


def test_j_endpoints():
    assert means.j_interp(1, 5, 2) == means.contraharmonic(5, 2)
    assert means.j_interp(0.5, 5, 2) == means.arithmetic(5, 2)
    with pytest.raises(DomainError):
        means.j_interp(0.4, 5, 2)


@pytest.mark.parametrize("pair", [(0, 1), (-1, 2), (1, math.inf), (math.nan, 1)])
def test_domain(pair):
    for fn in (means.arithmetic, means.contraharmonic, means.toader):
        with pytest.raises(DomainError):
            fn(*pair)


def test_modulus_round_trip():
    r = means.pair_to_modulus(3, 1)
    assert r == 0.5
    assert means.modulus_to_ratio(r) == pytest.approx(1 / 3, abs=1e-16)
    with pytest.raises(DomainError):
        means.pair_to_modulus(2, 2)


def test_pair_ordering():
    assert means.PositivePair(1, 4).ordered == (4, 1)


@pytest.mark.parametrize("r", [1e-7, 1e-3, 0.05, 0.3, 0.8, 0.99])
def test_excess_forms(r):
    a, b = 1 + r, 1 - r
    assert 1 + means.toader_excess(r) == pytest.approx(means.toader(a, b), rel=1e-14)
    assert 1 + means.contraharmonic_excess(r) == pytest.approx(means.contraharmonic(a, b),
                                                               rel=1e-15)
    assert 1 + means.j_excess(r, 0.8) == pytest.approx(means.j_interp(0.8, a, b), rel=1e-15)
    for p in (-2.0, 0.0, 1.5, means.POWER_UPPER_EXPONENT, 3.0):
        assert 1 + means.power_excess(r, p) == pytest.approx(means.power_mean(a, b, p), rel=1e-14)


def test_excess_high_precision_small_r():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    for r in (1e-6, 1e-3, 0.1):
        R = mp.mpf(r)
        want = ((((1 + R) ** 1.5 + (1 - R) ** 1.5) / 2) ** (mp.mpf(2) / 3)) - 1
        assert means.power_excess(r, 1.5) == pytest.approx(float(want), rel=1e-13)
        v, _ = means.toader_minus_power(r, 1.5)
        T = 2 / mp.pi * mp.quad(lambda t: mp.sqrt((1 + R) ** 2 * mp.cos(t) ** 2
                                                  + (1 - R) ** 2 * mp.sin(t) ** 2), [0, mp.pi / 2])
        assert v == pytest.approx(float(T - 1 - want), rel=1e-12)


def test_vectorised_excess():
    r = np.array([1e-5, 0.2, 0.7])
    np.testing.assert_array_equal(means.power_excess(r, 1.5),
                                  [means.power_excess(x, 1.5) for x in r])
    v, s = means.toader_minus_power(r, 1.5)
    assert v.shape == s.shape == (3,)
    assert np.all(v > 0)
