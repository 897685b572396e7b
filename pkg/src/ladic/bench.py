"""Timing harness behind `ladic bench`."""

import csv
import random as _random
import statistics
import time
from dataclasses import dataclass

from . import cyclodescent
from .baseline import baseline_embed
from .tower import Strategy

CSV_HEADER = ["strategy", "p", "ell", "level", "op", "reps", "median_seconds", "coefficients"]
OPS = ("build", "lift", "push", "embed", "mul", "inv", "baseline_embed")


@dataclass
class BenchRecord:
    strategy: str
    p: int
    ell: int
    level: int
    op: str
    reps: int
    median_seconds: float
    coefficients: int

    def row(self):
        return [self.strategy, self.p, self.ell, self.level, self.op, self.reps,
                f"{self.median_seconds:.9f}", self.coefficients]


def time_op(setup, fn, reps):
    """Median wall time of fn(setup()) over reps runs, after one discarded warm-up."""
    times = []
    for k in range(reps + 1):
        arg = setup()
        t = time.perf_counter()
        fn(arg)
        if k:
            times.append(time.perf_counter() - t)
    return statistics.median(times)


def _build_once(t, i):
    if t.strategy is Strategy.GENERAL:
        return cyclodescent.descend(t.init, i).Qi
    return t.derive_Q(i, t.level(i - 1).Q)


def bench_level(t, i, reps=5, rng=None, baseline_max_level=5, ops=OPS):
    """BenchRecords for one level (i >= 1)."""
    rng = rng or _random.Random(0)
    src = 1 if i >= 2 else 0
    jobs = {
        "build": (lambda: None, lambda _: _build_once(t, i)),
        "lift": (lambda: t.random_bipoly(i, rng), lambda A: t.lift(A, i)),
        "push": (lambda: t.random_element(i, rng), t.push),
        "embed": (lambda: t.random_element(src, rng), lambda a: t.embed(a, i)),
        "mul": (lambda: (t.random_element(i, rng), t.random_element(i, rng)), lambda ab: ab[0] * ab[1]),
        "inv": (lambda: _nonzero(t, i, rng), lambda a: a.inverse()),
        "baseline_embed": (lambda: t.random_element(src, rng),
                           lambda a: baseline_embed(t, a, i, rng)),
    }
    t.level(i)
    out = []
    for op in ops:
        if op == "baseline_embed" and not 2 <= i <= baseline_max_level:
            continue
        setup, fn = jobs[op]
        # the root-finding baseline is slow by design; one timed run is enough
        n = 1 if op == "baseline_embed" else reps
        med = time_op(setup, fn, n)
        out.append(BenchRecord(t.strategy.value, t.p, t.ell, i, op, n, med, t.ell ** i))
    return out


def _nonzero(t, i, rng):
    while True:
        a = t.random_element(i, rng)
        if not a.is_zero():
            return a


def run_bench(t, levels, reps=5, rng=None, baseline_max_level=5, ops=OPS, start=1):
    records = []
    for i in range(start, levels + 1):
        records.extend(bench_level(t, i, reps, rng, baseline_max_level, ops))
    return records


def write_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
