"""Command-line entry point: ``toader-bounds {eval,table,verify,sharpness}``.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import bounds, elliptic, means, sharpness, verify
from .errors import SearchError, ToaderBoundsError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def fmt(x) -> str:
    """Shortest-round-trip-safe decimal used everywhere on stdout."""
    return "%.16g" % x


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _need(args, parser, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"--fn {args.fn} needs " + ", ".join("--" + n.replace("_", "-")
                                                        for n in missing))


def _eval_value(args, parser):
    fn = args.fn
    if fn in ("K", "E"):
        _need(args, parser, "r")
        return (elliptic.ell_k if fn == "K" else elliptic.ell_e)(args.r)
    _need(args, parser, "a", "b")
    if fn == "T":
        return means.toader(args.a, args.b)
    if fn == "C":
        return means.contraharmonic(args.a, args.b)
    if fn == "A":
        return means.arithmetic(args.a, args.b)
    if fn == "Mp":
        _need(args, parser, "p")
        return means.power_mean(args.a, args.b, args.p)
    if fn == "J":
        _need(args, parser, "x")
        return means.j_interp(args.x, args.a, args.b)
    _need(args, parser, "alpha")
    return bounds.combination(args.alpha, args.a, args.b)


def cmd_eval(args, parser):
    print(fmt(_eval_value(args, parser)))
    return EXIT_OK


def _envelope_list(text, parser):
    names = [n.strip() for n in text.split(",") if n.strip()]
    if not names:
        parser.error("--envelopes needs at least one name")
    for n in names:
        if n not in bounds.ENVELOPE_NAMES:
            parser.error(f"unknown envelope {n!r}; choose from {', '.join(bounds.ENVELOPE_NAMES)}")
    return [bounds.envelope(n) for n in names]


def cmd_table(args, parser):
    envs = _envelope_list(args.envelopes, parser)
    if args.steps < 1:
        parser.error("--steps must be at least 1")
    if not 0.0 <= args.r_min <= args.r_max <= 1.0:
        raise elliptic.DomainError("need 0 <= r-min <= r-max <= 1")
    grid = np.linspace(args.r_min, args.r_max, args.steps)
    rows = []
    for r in grid:
        r = float(r)
        row = [fmt(r), fmt(elliptic.ell_e(r))]  # same scalar path as `eval`
        for env in envs:
            row += [fmt(env.lower(r)), fmt(env.upper(r))]
        rows.append(row)
    out = csv.writer(sys.stdout, lineterminator="\n")
    header = ["r", "E"]
    for env in envs:
        header += [f"{env.name}_lo", f"{env.name}_hi"]
    out.writerow(header)
    out.writerows(rows)
    return EXIT_OK


def cmd_verify(args, parser):
    if args.samples < 1:
        parser.error("--samples must be positive")
    reports = verify.run(args.suite, args.samples, args.seed, args.threads)
    for rep in reports:
        print(rep.render())
    failed = sum(not rep.passed for rep in reports)
    print(f"{len(reports) - failed}/{len(reports)} suites passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_sharpness(args, parser):
    if not 0.0 < args.alpha < 1.0:
        parser.error(f"--alpha must lie in (0, 1), got {args.alpha!r}")
    est = sharpness.estimate_thresholds(args.alpha, tol=args.tol)
    print(sharpness.describe(est))
    ok = (abs(est.u_low - est.target_low) <= args.tol
          and abs(est.u_high - est.target_high) <= args.tol)
    if args.perturb is not None:
        eps = args.perturb
        probes = (("lower", bounds.lambda_star(args.alpha) + eps, "lambda* + eps"),
                  ("upper", bounds.mu_star(args.alpha) - eps, "mu* - eps"))
        for side, p, label in probes:
            try:
                w = sharpness.find_violation_witness(args.alpha, p, side)
            except SearchError as exc:
                print(f"witness {side:5s} ({label}): none ({exc})")
                ok = False
                continue
            a, b = w.pair
            print(f"witness {side:5s} ({label} = {fmt(p)}): r = {fmt(w.r)}, "
                  f"pair = ({fmt(a)}, {fmt(b)}), gap = {w.value:.6e}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    parser = _Parser(prog="toader-bounds",
                     description="Elliptic integrals, Toader-type means and their sharp bounds.")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent verification suites")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one function")
    p.add_argument("--fn", required=True,
                   choices=["K", "E", "T", "C", "A", "Mp", "J", "combination"])
    for name in ("r", "a", "b", "p", "x", "alpha"):
        p.add_argument("--" + name, type=float)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("table", help="CSV of E(r) and envelope bounds")
    p.add_argument("--envelopes", default="corollary33",
                   help="comma-separated: " + ",".join(bounds.ENVELOPE_NAMES))
    p.add_argument("--r-min", type=float, default=0.01)
    p.add_argument("--r-max", type=float, default=0.99)
    p.add_argument("--steps", type=int, default=99)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", default="all", choices=("all",) + verify.SUITE_NAMES)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sharpness", help="recover the thresholds of the gap function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--perturb", type=float, default=None, metavar="EPS")
    p.set_defaults(handler=cmd_sharpness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.handler(args, parser)
    except ToaderBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
