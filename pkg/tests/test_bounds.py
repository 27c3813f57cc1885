import math

import numpy as np
import pytest

from toader_bounds import bounds, elliptic, means
from toader_bounds.errors import DomainError

ALPHAS = (0.1, 0.25, 0.5, 0.75, 0.9)
GRID = np.arange(1, 1000) / 1000


def test_sharp_constants():
    assert bounds.lambda_star(0.75) == 0.625
    assert bounds.lambda_star(0.0) == 0.75
    assert bounds.lambda_star(1.0) == 0.5
    assert bounds.mu_star(1.0) == 0.5
    assert bounds.mu_star(0.75) == pytest.approx(0.5 * (1 + math.sqrt(4 / math.pi - 1) / 2),
                                                 abs=1e-16)
    for a in ALPHAS:
        assert 0.5 < bounds.lambda_star(a) < bounds.mu_star(a) < 1


def test_mu_star_limit_is_known_constant():
    want = 0.5 + math.sqrt(4 * math.pi - math.pi ** 2) / (2 * math.pi)
    assert bounds.single_mean_beta() == want
    assert abs(bounds.mu_star(0.0) - want) <= 1e-15
    assert abs(bounds.mu_star(1e-13) - want) <= 1e-13


def test_thresholds_map_to_constants():
    for a in ALPHAS:
        assert bounds.interp_to_u(bounds.lambda_star(a)) == pytest.approx(
            bounds.lower_threshold(a), rel=1e-15)
        assert bounds.interp_to_u(bounds.mu_star(a)) == pytest.approx(
            bounds.upper_threshold(a), rel=1e-15)


@pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan])
def test_alpha_domain(bad):
    with pytest.raises(DomainError):
        bounds.lambda_star(bad)
    with pytest.raises(DomainError):
        bounds.combination(bad, 2, 1)


def test_combination():
    assert bounds.combination(1.0, 3, 1) == 2
    assert bounds.combination(0.0, 2, 1) == means.toader(2, 1)
    assert bounds.combination(0.3, 4, 4) == 4


def test_f_limits():
    a, u = 0.5, 0.13
    assert bounds.f_u_alpha(u, a, 1 - 1e-12) == pytest.approx(bounds.f_limit_at_one(u, a),
                                                              abs=1e-9)
    assert bounds.f_u_alpha(u, a, 1e-4) / 1e-8 == pytest.approx(u - (1 - a) / 4, rel=1e-6)


def test_f_domain():
    with pytest.raises(DomainError):
        bounds.f_u_alpha(0.1, 0.5, 0.0)
    with pytest.raises(DomainError):
        bounds.f_u_alpha(0.1, 0.5, 1.0)


def test_f_branches_join():
    # series and direct branches of f agree just around r = 0.25
    for r in (0.2499, 0.25, 0.2501):
        direct = 0.13 * r * r - 0.5 * means.toader_excess(r)
        assert bounds.f_u_alpha(0.13, 0.5, r) == pytest.approx(direct, rel=1e-12)


def test_f_against_high_precision():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    u, a = bounds.interp_to_u(bounds.lambda_star(0.5)), 0.5
    for r in (1e-5, 1e-3, 0.1, 0.5):
        R = mp.mpf(r)
        K, E = mp.ellipk(R * R), mp.ellipe(R * R)
        h = 2 / mp.pi * (2 * E - (1 - R * R) * K) - 1
        want = mp.mpf(u) * R * R - (1 - mp.mpf(a)) * h
        assert bounds.f_u_alpha(u, a, r) == pytest.approx(float(want), rel=1e-9)


def test_g_range():
    assert bounds.g_fn(1e-6) == pytest.approx(0.25, abs=1e-12)
    assert bounds.g_fn(0.999999) == pytest.approx(1 / math.pi, abs=1e-4)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_direct_and_reduced_gap_agree(alpha):
    rng = np.random.default_rng(3)
    a = np.exp(rng.uniform(-3, 3, 200))
    b = a * np.exp(rng.uniform(0.05, 3, 200))
    for p in (bounds.lambda_star(alpha), bounds.mu_star(alpha), 0.9):
        red = bounds.theorem31_reduced(alpha, p, a, b)
        direct = np.array([bounds.theorem31_check(alpha, p, x, y) for x, y in zip(a, b)])
        np.testing.assert_allclose(direct, red, rtol=1e-9, atol=1e-13 * b.max())


def test_gap_signs_at_sharp_constants():
    a, b = 3.0, 1.0
    for alpha in ALPHAS:
        assert bounds.theorem31_check(alpha, bounds.lambda_star(alpha), a, b) < 0
        assert bounds.theorem31_check(alpha, bounds.mu_star(alpha), a, b) > 0
    with pytest.raises(DomainError):
        bounds.theorem31_check(0.5, 0.6, 2, 2)


def test_envelope_lookup():
    assert set(bounds.ENVELOPE_NAMES) >= {"corollary33", "chu34", "guoqi35", "yinqi36"}
    assert not bounds.envelope("yinqi36").strict
    with pytest.raises(LookupError):
        bounds.envelope("nope")


@pytest.mark.parametrize("name", ["corollary33", "chu34", "guoqi35"])
def test_strict_envelopes(name):
    lo_m, lo_s, hi_m, hi_s = bounds.envelope(name).margins(GRID)
    assert np.all(lo_m > 1e-15 * lo_s)
    assert np.all(hi_m > 1e-15 * hi_s)


def test_nonstrict_envelope_holds():
    lo_m, lo_s, hi_m, hi_s = bounds.envelope("yinqi36").margins(GRID)
    assert np.all(lo_m >= -1e-15 * lo_s)
    assert np.all(hi_m >= -1e-15 * hi_s)


@pytest.mark.parametrize("name", bounds.ENVELOPE_NAMES)
@pytest.mark.parametrize("r", [1e-3, 0.05, 0.29, 0.31, 0.7, 0.999])
def test_margins_against_high_precision(name, r):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 60
    env = bounds.envelope(name)
    E = mp.ellipe(mp.mpf(r) ** 2)
    lo_m, _, hi_m, _ = env.margins(r)
    # bounds with irrational constants (chu34 upper, guoqi35) carry ~1 ulp of
    # pi/2 in their margin; series-backed margins are accurate to ~1e-16 relative
    for got, bound_val, sign in ((lo_m, env.lower(r), 1), (hi_m, env.upper(r), -1)):
        want = float(sign * (E - _mp_bound(name, bound_val, env, r, sign, mp)))
        assert got == pytest.approx(want, rel=1e-6, abs=1e-15)


def _mp_bound(name, fallback, env, r, sign, mp):
    R = mp.mpf(r)
    x = mp.sqrt(1 - R * R)
    hp = mp.pi / 2
    s2 = mp.sqrt(2)
    if name == "corollary33" or (name == "corollary33_printed" and sign > 0):
        if sign > 0:
            return hp * ((17 + 30 * x + 17 * x * x) / (8 * (1 + x)) - mp.mpf(3) / 2 * (1 + x))
        return mp.pi * (x + (1 - x) ** 2 / mp.pi) / (1 + x)
    if name == "corollary33_printed":
        return mp.pi * (x + 2 * (1 - x) ** 2 / mp.pi) / (1 + x)
    if name == "chu34":
        if sign > 0:
            return hp * (mp.sqrt((1 + x * x) / 2) / 2 + (1 + x) / 4)
        c1 = (4 - mp.pi) / ((s2 - 1) * mp.pi)
        c2 = (s2 * mp.pi - 4) / (2 * (s2 - 1) * mp.pi)
        return hp * (c1 * mp.sqrt((1 + x * x) / 2) + c2 * (1 + x))
    if name == "guoqi35":
        if sign > 0:
            return hp - ((1 - R) * mp.log(1 + R) - (1 + R) * mp.log(1 - R)) / 2
        return (mp.pi - 1) / 2 + (1 - R * R) / (4 * R) * mp.log((1 + R) / (1 - R))
    if sign > 0:
        return hp * mp.sqrt(6 + 2 * x - 3 * R * R) / (2 * s2)
    return hp * mp.sqrt(10 - 2 * x - 5 * R * R) / (2 * s2)


def test_corollary_matches_rearranged_theorem():
    mu = 0.5 * (1 + math.sqrt(4 / math.pi - 1) / 2)
    thm = bounds.theorem31_envelope(0.75, 0.625, mu)
    env = bounds.envelope("corollary33")
    np.testing.assert_allclose(env.lower(GRID), thm.lower(GRID), atol=1e-12, rtol=0)
    np.testing.assert_allclose(env.upper(GRID), thm.upper(GRID), atol=1e-12, rtol=0)


def test_printed_upper_is_looser_by_known_term():
    x = elliptic.complement(GRID)
    diff = bounds.corollary33_printed_upper(GRID) - bounds.corollary33_upper(GRID)
    np.testing.assert_allclose(diff, (1 - x) ** 2 / (1 + x), rtol=1e-9, atol=1e-15)


def test_envelopes_scalar_and_array():
    for name in bounds.ENVELOPE_NAMES:
        env = bounds.envelope(name)
        assert isinstance(env.lower(0.5), float)
        assert env.upper(np.array([0.5]))[0] == env.upper(0.5)
        assert len(env.margins(0.5)) == 4


def test_dominance():
    m, s = bounds.dominance_margins(GRID, "chu34")
    assert np.all(m >= -1e-15 * s)
    m, s = bounds.dominance_margins(GRID, "yinqi36")
    assert np.all(m > 1e-15 * s)


def test_polynomial_identities():
    x = np.linspace(0, 1, 1002)[1:-1]
    for fn in (bounds.remark2_identity, bounds.remark3_identity):
        got = np.array([fn(v) for v in x])
        np.testing.assert_allclose(got, (1 - x) ** 4, rtol=1e-12)


@pytest.mark.parametrize("name,side", [("corollary33", 0), ("corollary33", 1), ("chu34", 0),
                                       ("yinqi36", 0), ("yinqi36", 1)])
@pytest.mark.parametrize("r", [1e-3, 0.01, 0.1, 0.3])
def test_series_margins_relative_accuracy(name, side, r):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 60
    sign = 1 if side == 0 else -1
    E = mp.ellipe(mp.mpf(r) ** 2)
    want = float(sign * (E - _mp_bound(name, None, None, r, sign, mp)))
    got = bounds.envelope(name).margins(r)[2 * side]
    assert got == pytest.approx(want, rel=1e-10)


def test_rms_bounds_beat_logarithmic_bounds_somewhere():
    lo, hi = bounds.tighter_points("chu34", "guoqi35", GRID)
    assert lo.any() or hi.any()
    # a bound is never strictly tighter than itself
    lo, hi = bounds.tighter_points("chu34", "chu34", GRID)
    assert not lo.any() and not hi.any()
