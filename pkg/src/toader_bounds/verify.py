"""Invariant suites over grids and seeded random samples.

Each suite returns a VerificationReport.  A check passes when its margin
exceeds ``STRICT * scale`` (strict claims) or ``-STRICT * scale``
(non-strict claims), where ``scale`` is the magnitude of the quantities that
were subtracted to form the margin.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import bounds, elliptic, means, sharpness
from .errors import SearchError

STRICT = 1e-15
ALPHAS = (0.1, 0.25, 0.5, 0.75, 0.9)
PAIR_RANGE = (1e-3, 1e3)


@dataclass
class VerificationReport:
    suite: str
    points_checked: int
    failures: int
    worst_margin: float
    witness: Optional[tuple]
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        wit = "-" if self.witness is None else ", ".join(_fmt(v) for v in self.witness)
        return (f"{status} {self.suite}: {self.points_checked} checks, "
                f"{self.failures} failures, worst margin {self.worst_margin:.3e} "
                f"at ({wit}), {self.elapsed_ms:.0f} ms")


def _fmt(v):
    if isinstance(v, str):
        return v
    return f"{v:.16g}"


class _Tally:
    """Accumulates margins; keeps the smallest one and its inputs."""

    def __init__(self):
        self.points = 0
        self.failures = 0
        self.worst = math.inf
        self.witness = None

    def check(self, margin, scale, inputs, strict=True):
        margin = np.atleast_1d(np.asarray(margin, dtype=np.float64))
        scale = np.broadcast_to(np.asarray(scale, dtype=np.float64), margin.shape)
        floor = STRICT * scale
        ok = margin > floor if strict else margin >= -floor
        ok &= np.isfinite(margin)
        self.points += margin.size
        self.failures += int(margin.size - np.count_nonzero(ok))
        if margin.size:
            # nan margins sort first so a broken point is always the witness
            i = int(np.argmin(np.where(np.isnan(margin), -np.inf, margin)))
            if margin[i] < self.worst or (np.isnan(margin[i]) and self.witness is None):
                self.worst = float(margin[i])
                self.witness = inputs(i)

    def flag(self, ok, inputs):
        """A boolean check with no meaningful margin."""
        self.points += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = inputs

    def report(self, suite, t0):
        worst = self.worst if self.points else 0.0
        return VerificationReport(suite, self.points, self.failures, worst, self.witness,
                                  1e3 * (time.perf_counter() - t0))


def standard_grid(n=999):
    """r = k/(n+1), k = 1..n."""
    return np.arange(1, n + 1, dtype=np.float64) / (n + 1)


def random_pairs(rng, n, lo=PAIR_RANGE[0], hi=PAIR_RANGE[1]):
    """Log-uniform pairs in (lo, hi)^2, with exact ties resampled away."""
    ll, lh = math.log(lo), math.log(hi)
    a = np.exp(rng.uniform(ll, lh, n))
    b = np.exp(rng.uniform(ll, lh, n))
    tie = a == b
    while tie.any():
        b[tie] = np.exp(rng.uniform(ll, lh, int(tie.sum())))
        tie = a == b
    return a, b


def _pair_inputs(a, b, *extra):
    return lambda i: tuple(extra) + (float(a[i]), float(b[i]))


# --- suites ----------------------------------------------------------------

def suite_oracle(rng, samples):
    """AGM K, E against adaptive quadrature, 1e-10 absolute."""
    t = _Tally()
    r = standard_grid()
    g = elliptic.grid(r)
    for kind, agm in (("K", g.K), ("E", g.E)):
        ref = elliptic.oracle_grid(r, kind)
        err = np.abs(agm - ref)
        t.check(1e-10 - err, 0.0, lambda i, kind=kind: (kind, float(r[i])))
    t.check(1e-15 - abs(elliptic.ell_k(0.0) - math.pi / 2), 0.0, lambda i: ("K", 0.0))
    t.check(1e-15 - abs(elliptic.ell_e(0.0) - math.pi / 2), 0.0, lambda i: ("E", 0.0))
    t.check(1e-15 - abs(elliptic.ell_e(1.0) - 1.0), 0.0, lambda i: ("E", 1.0))
    return t


def central_difference(fn, r, h=1e-6):
    return (fn(r + h) - fn(r - h)) / (2.0 * h)


DERIVATIVES = {
    "K": (elliptic.ell_k, elliptic.d_ell_k),
    "E": (elliptic.ell_e, elliptic.d_ell_e),
    "K-E": (elliptic.k_minus_e, elliptic.d_k_minus_e),
    "E-r'^2K": (elliptic.e_minus_rc2k, lambda r: r * elliptic.ell_k(r)),
}


def suite_derivatives(rng, samples):
    """Closed-form derivatives against central differences, 1e-6 absolute."""
    t = _Tally()
    r = np.linspace(0.01, 0.99, 981)
    for name, (fn, dfn) in DERIVATIVES.items():
        err = np.array([abs(central_difference(fn, x) - dfn(x)) for x in r])
        t.check(1e-6 - err, 0.0, lambda i, name=name: (name, float(r[i])))
    return t


def suite_landen(rng, samples):
    """(2E - r'^2 K)/(1 + r) = E(2 sqrt(r)/(1 + r)) on [0, 0.99], 1e-11."""
    t = _Tally()
    r = np.linspace(0.0, 0.99, 991)
    err = np.array([abs(elliptic.landen_rhs(x) - elliptic.ell_e(elliptic.landen_modulus(x)))
                    for x in r])
    t.check(1e-11 - err, 0.0, lambda i: (float(r[i]),))
    return t


def suite_lemma21(rng, samples):
    """Monotonicity and ranges of (E - r'^2 K)/r^2 and 2E - r'^2 K."""
    t = _Tally()
    r = np.unique(np.concatenate([[1e-3], standard_grid(), [1.0 - 1e-6]]))
    g = elliptic.grid(r)
    ratio = g.e_minus_rc2k / (r * r)
    landen = elliptic.HALF_PI + g.landen_excess
    for name, v in (("ratio", ratio), ("2E-r'^2K", landen)):
        step = np.diff(v)
        t.check(step, np.abs(v[1:]), lambda i, name=name: (name, float(r[i]), float(r[i + 1])))
    ends = ((ratio[0], math.pi / 4), (ratio[-1], 1.0),
            (landen[0], math.pi / 2), (landen[-1], 2.0))
    for k, (got, want) in enumerate(ends):
        t.check(1e-4 - abs(got - want), 0.0, lambda i, k=k: ("boundary", k))
    return t


def suite_lemma22(rng, samples):
    """Regime classification of f_{u,alpha}, the thresholds and eta."""
    t = _Tally()
    r = sharpness.graded_grid(2000)
    for alpha in ALPHAS:
        lo, hi = bounds.lower_threshold(alpha), bounds.upper_threshold(alpha)
        cases = [(lo * s, sharpness.NEGATIVE) for s in (0.0, 0.5, 0.999)]
        cases += [(lo + (hi - lo) * s, sharpness.CROSSING) for s in (0.01, 0.5, 0.99)]
        cases += [(hi + s, sharpness.POSITIVE) for s in (1e-6, 0.01, 0.5)]
        for u, want in cases:
            t.flag(sharpness.classify(u, alpha, r) == want, (alpha, u, want))
        est = sharpness.estimate_thresholds(alpha)
        t.check(1e-6 - abs(est.u_low - lo), 0.0, lambda i, a=alpha: (a, "u_low"))
        t.check(1e-6 - abs(est.u_high - hi), 0.0, lambda i, a=alpha: (a, "u_high"))
        prev = 0.0
        for s in np.linspace(0.05, 0.95, 10):
            u = lo + (hi - lo) * s
            eta = sharpness.sign_change_point(bounds.GapParams(u, alpha))
            t.flag(sharpness.crossing_direction_ok(u, alpha, eta) and eta > prev,
                   (alpha, float(u), eta))
            prev = eta
    return t


def _theorem31_pairs(t, alpha, a, b):
    lam, mu = bounds.lambda_star(alpha), bounds.mu_star(alpha)
    v, s = bounds.theorem31_terms(alpha, lam, a, b)
    t.check(-v, s, _pair_inputs(a, b, alpha, "lower"))
    v, s = bounds.theorem31_terms(alpha, mu, a, b)
    t.check(v, s, _pair_inputs(a, b, alpha, "upper"))


def _witness_confirmed(alpha, p, side, eps):
    try:
        w = sharpness.find_violation_witness(alpha, p, side)
    except SearchError:
        return False, (alpha, side, eps, "none")
    gap = bounds.theorem31_check(alpha, p, *w.pair)
    ok = gap > 0.0 if side == "lower" else gap < 0.0
    return ok, (alpha, side, eps, w.r)


def suite_theorem31(rng, samples):
    """The double inequality at the sharp constants on random pairs, plus
    violation witnesses for perturbed constants."""
    t = _Tally()
    for alpha in ALPHAS:
        a, b = random_pairs(rng, samples)
        _theorem31_pairs(t, alpha, a, b)
        for eps in (1e-2, 1e-3):
            t.flag(*_witness_confirmed(alpha, bounds.lambda_star(alpha) + eps, "lower", eps))
            t.flag(*_witness_confirmed(alpha, bounds.mu_star(alpha) - eps, "upper", eps))
    return t


def _envelope_check(t, name, r, strict):
    env = bounds.envelope(name)
    lo_m, lo_s, hi_m, hi_s = env.margins(r)
    t.check(lo_m, lo_s, lambda i: (name, "lower", float(r[i])), strict)
    t.check(hi_m, hi_s, lambda i: (name, "upper", float(r[i])), strict)


COROLLARY_ALPHA = 0.75
COROLLARY_LAMBDA = 0.625


def corollary_mu():
    return 0.5 * (1.0 + math.sqrt(4.0 / math.pi - 1.0) / 2.0)


def suite_corollary33(rng, samples):
    """Strict envelope on the grid; agrees with the rearranged double
    inequality at alpha = 3/4 to 1e-12."""
    t = _Tally()
    r = standard_grid()
    _envelope_check(t, "corollary33", r, True)
    env = bounds.envelope("corollary33")
    thm = bounds.theorem31_envelope(COROLLARY_ALPHA, COROLLARY_LAMBDA, corollary_mu())
    for side in ("lower", "upper"):
        d = np.abs(getattr(env, side)(r) - getattr(thm, side)(r))
        t.check(1e-12 - d, 0.0, lambda i, side=side: ("coincide", side, float(r[i])))
    return t


def suite_envelopes(rng, samples):
    """Competitor envelopes: two strict, one non-strict."""
    t = _Tally()
    r = standard_grid()
    for name in bounds.ENVELOPE_NAMES:
        _envelope_check(t, name, r, bounds.envelope(name).strict)
    # chu34 beats guoqi35 somewhere on the grid (existence only)
    lo, hi = bounds.tighter_points("chu34", "guoqi35", r)
    t.flag(bool(lo.any() or hi.any()), ("chu34 tighter than guoqi35", "nowhere"))
    return t


def suite_dominance(rng, samples):
    """corollary33's lower bound dominates the other two polynomial-root
    lower bounds; the identities behind that hold to 1e-12 relative."""
    t = _Tally()
    r = standard_grid()
    m, s = bounds.dominance_margins(r, "chu34")
    t.check(m, s, lambda i: ("chu34", float(r[i])), strict=False)
    m, s = bounds.dominance_margins(r, "yinqi36")
    t.check(m, s, lambda i: ("yinqi36", float(r[i])))
    x = np.linspace(0.0, 1.0, 1002)[1:-1]
    for name, fn in (("remark2", bounds.remark2_identity), ("remark3", bounds.remark3_identity)):
        target = (1.0 - x) ** 4
        got = np.array([fn(v) for v in x])
        rel = np.abs(got - target) / target
        t.check(1e-12 - rel, 0.0, lambda i, name=name: (name, float(x[i])))
    return t


def suite_meanorder(rng, samples):
    """A < T < C and M_{3/2} < T < M_{ln 2/ln(pi/2)} on random pairs."""
    t = _Tally()
    a, b = random_pairs(rng, samples)
    r = np.abs(a - b) / (a + b)
    h = means.toader_excess(r)
    t.check(h, 1.0, _pair_inputs(a, b, "A<T"))
    t.check(r * r - h, r * r, _pair_inputs(a, b, "T<C"))
    v, s = means.toader_minus_power(r, 1.5)
    t.check(v, s, _pair_inputs(a, b, "M3/2<T"))
    v, s = means.toader_minus_power(r, means.POWER_UPPER_EXPONENT)
    t.check(-v, s, _pair_inputs(a, b, "T<Mq"))
    return t


SUITES: dict[str, Callable] = {
    "oracle": suite_oracle,
    "derivatives": suite_derivatives,
    "landen": suite_landen,
    "lemma21": suite_lemma21,
    "lemma22": suite_lemma22,
    "theorem31": suite_theorem31,
    "corollary33": suite_corollary33,
    "envelopes": suite_envelopes,
    "dominance": suite_dominance,
    "meanorder": suite_meanorder,
}
SUITE_NAMES = tuple(SUITES)


def run_suite(name, samples=10_000, seed=0) -> VerificationReport:
    """Run one suite with its own generator seeded from ``seed``."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise LookupError(f"unknown suite {name!r}; choose from all, "
                          f"{', '.join(SUITE_NAMES)}") from None
    if samples < 1:
        raise ValueError("samples must be positive")
    t0 = time.perf_counter()
    tally = fn(np.random.default_rng(seed), samples)
    return tally.report(name, t0)


def run(name="all", samples=10_000, seed=0, threads=1) -> list[VerificationReport]:
    """Run a suite or all of them; results come back in suite order."""
    names = SUITE_NAMES if name == "all" else (name,)
    if threads <= 1 or len(names) == 1:
        return [run_suite(n, samples, seed) for n in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: run_suite(n, samples, seed), names))
