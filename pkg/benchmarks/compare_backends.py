"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/compare_backends.py [--reps 5] [--p 101]

Times raw polynomial product, division with remainder and xgcd at a few
sizes, then one tower operation (lift + push at a mid level) under each
backend.  Prints one line per (operation, size) with both medians and the
speedup.
"""

import argparse
import random
import statistics
import sys
import time

from ladic import Tower
from ladic.fieldcore import _backend


def median_time(fn, reps):
    fn()
    out = []
    for _ in range(reps):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def kernel_cases(p, rng):
    for n in (16, 64, 256, 1024):
        a = [rng.randrange(p) for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n)]
        big = [rng.randrange(p) for _ in range(2 * n)]
        yield "mul", n, lambda a=a, b=b: _backend.mul(a, b, p)
        yield "divrem", n, lambda big=big, b=b: _backend.divrem(big, b + [1], p)
        if n <= 256:
            yield "xgcd", n, lambda a=a, b=b: _backend.xgcd(a, b + [1], p)


def tower_cases(rng):
    for p, ell, strategy, level in ((5, 3, "t2", 7), (101, 3, "elliptic", 6)):
        t = Tower.create(p, ell, strategy, seed=1)
        t.level(level)
        A = t.random_bipoly(level, rng)
        yield f"lift+push {strategy}", ell ** level, lambda t=t, A=A, i=level: t.push(t.lift(A, i))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--p", type=int, default=101)
    args = ap.parse_args(argv)
    if not _backend.compiled_available():
        print("compiled kernels are not built; only the fallback can run", file=sys.stderr)
        return 1
    rng = random.Random(0)
    cases = list(kernel_cases(args.p, rng)) + list(tower_cases(rng))
    print(f"{'operation':<22}{'size':>7}{'compiled':>13}{'python':>13}{'speedup':>9}")
    for name, size, fn in cases:
        times = {}
        for mode in ("compiled", "python"):
            prev = _backend.set_backend(mode)
            try:
                times[mode] = median_time(fn, args.reps)
            finally:
                _backend.set_backend(prev)
        print(f"{name:<22}{size:>7}{times['compiled']:>12.6f}s{times['python']:>12.6f}s"
              f"{times['python'] / times['compiled']:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
