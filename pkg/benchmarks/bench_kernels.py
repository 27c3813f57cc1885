"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--out FILE]

Writes CSV (kernel,size,backend,best_s,per_item_us,speedup) to stdout or FILE.
"""
import argparse
import csv
import sys
import timeit

import numpy as np

from toader_bounds import _pykernels

try:
    from toader_bounds import _ckernels
except ImportError:
    sys.exit("compiled kernels are not built; reinstall with a C compiler and Cython available")


def _cases():
    rng = np.random.default_rng(0)
    for n in (1_000, 100_000):
        r = rng.uniform(0.0, 0.999, n)
        rc = np.sqrt((1 - r) * (1 + r))
        yield "combos_array", n, lambda k, r=r, rc=rc: k.combos_array(r, rc)
    r = rng.uniform(0.0, 0.999, 2_000)
    rc = np.sqrt((1 - r) * (1 + r))
    yield "agm_scalar_loop", r.size, lambda k: [k.agm(a, b) for a, b in zip(r, rc)]
    for n in (99, 999):
        q = np.linspace(1e-3, 1.0, n) ** 2
        yield "simpson_batch_E", n, lambda k, q=q: k.simpson_batch(1, np.ones_like(q), q,
                                                                   1e-13, 10**6)
        yield "simpson_batch_K", n, lambda k, q=q: k.simpson_batch(0, np.ones_like(q), q,
                                                                   1e-13, 10**6)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args(argv)
    w = csv.writer(args.out, lineterminator="\n")
    w.writerow(["kernel", "size", "backend", "best_s", "per_item_us", "speedup"])
    for name, n, fn in _cases():
        best = {}
        for mod in (_pykernels, _ckernels):
            fn(mod)  # warm-up
            best[mod.BACKEND] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        for backend, t in best.items():
            w.writerow([name, n, backend, f"{t:.6f}", f"{1e6 * t / n:.3f}",
                        f"{best['python'] / t:.1f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
