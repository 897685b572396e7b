"""Command-line front end: ladic {build,verify,embed,bench,export,import}."""

import argparse
import itertools
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bench, serialize
from .errors import (
    InvalidParameters,
    LadicError,
    NotInSubfield,
    TowerFileError,
    VersionMismatch,
)
from .tower import Tower

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARAMS = 2
EXIT_IO = 3
EXIT_SUBFIELD = 4
EXIT_VERSION = 5

log = logging.getLogger("ladic")


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InvalidParameters(f"SEED={env!r} is not an integer") from None


def _int_list(s):
    try:
        return [int(x) for x in str(s).split(",")]
    except ValueError:
        raise InvalidParameters(f"{s!r} is not an integer or comma-separated list") from None


def cmd_build(args):
    t = Tower.create(args.p, args.ell, args.strategy, seed=_seed(args))
    if args.levels < 0:
        raise InvalidParameters("--levels must be nonnegative")
    t.level(args.levels)
    serialize.dump(t, args.out, args.levels)
    print(f"built {t.strategy.value} tower p={t.p} ell={t.ell} levels 0..{args.levels} -> {args.out}")
    return EXIT_OK


def cmd_verify(args):
    t, top = serialize.load(args.inp, strict=False)
    levels = [args.level] if args.level is not None else range(top + 1)
    rng = random.Random(_seed(args))
    ok = True
    for i in levels:
        if not 0 <= i <= top:
            raise InvalidParameters(f"level {i} is not in the file (0..{top})")
        report = t.verify_level(i, samples=args.samples, rng=rng)
        for line in report.lines():
            print(line)
        ok = ok and report.ok
    print("verify: OK" if ok else "verify: FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def _read_element(t, path, level):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise TowerFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise TowerFileError(f"{path} is not valid JSON: {exc}") from None
    if isinstance(doc, dict):
        if "level" in doc and doc["level"] != level:
            raise InvalidParameters(f"element file is at level {doc['level']}, not {level}")
        doc = doc.get("coeffs")
    if not isinstance(doc, list):
        raise TowerFileError("element file must hold a coefficient list")
    coeffs = [serialize._int(c, "element") for c in doc]
    if len(coeffs) > t.ell ** level:
        raise InvalidParameters(f"element has {len(coeffs)} coefficients, level {level} allows {t.ell ** level}")
    return t.element(level, coeffs)


def cmd_embed(args):
    t, _ = serialize.load(args.inp, strict=True)
    j, i = args.src, args.dst
    if j < 0 or i < 0:
        raise InvalidParameters("levels must be nonnegative")
    if args.element is not None:
        a = _read_element(t, args.element, j)
    else:
        a = t.random_element(j, random.Random(_seed(args)))
    b = t.embed(a, i) if i >= j else t.project(a, i)
    doc = {"level": i, "coeffs": [str(c) for c in b.coeffs]}
    text = json.dumps(doc)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise TowerFileError(f"cannot write {args.out}: {exc}") from None
    else:
        print(text)
    return EXIT_OK


def _bench_config(cfg):
    p, ell, strategy, levels, reps, seed, bmax = cfg
    rng = random.Random(seed)
    t = Tower.create(p, ell, strategy, rng=rng)
    return bench.run_bench(t, levels, reps, rng, bmax)


def cmd_bench(args):
    if args.reps < 1 or args.levels < 1:
        raise InvalidParameters("--reps and --levels must be positive")
    seed = _seed(args)
    configs = [(p, ell, s, args.levels, args.reps, seed, args.baseline_max_level)
               for p, ell, s in itertools.product(_int_list(args.p), _int_list(args.ell),
                                                   args.strategy.split(","))]
    for p, ell, s, *_ in configs:
        Tower.create(p, ell, s, seed=seed)  # fail fast on bad parameters
    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_bench_config, configs))
    else:
        results = [_bench_config(c) for c in configs]
    records = [r for rs in results for r in rs]
    if args.csv and args.csv != "-":
        try:
            with open(args.csv, "w", newline="") as fh:
                bench.write_csv(records, fh)
        except OSError as exc:
            raise TowerFileError(f"cannot write {args.csv}: {exc}") from None
        print(f"wrote {len(records)} records to {args.csv}")
    else:
        bench.write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_export(args):
    t, top = serialize.load(args.inp, strict=True)
    levels = top if args.levels is None else args.levels
    t.level(levels)
    serialize.dump(t, args.out, levels)
    print(f"exported levels 0..{levels} -> {args.out}")
    return EXIT_OK


def cmd_import(args):
    t, top = serialize.load(args.inp, strict=True)
    print(f"imported {t.strategy.value} tower p={t.p} ell={t.ell} levels 0..{top}: consistent")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="ladic", description="l-adic towers of finite fields")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None, help="RNG seed (default: $SEED, else 0)")
        return sp

    sp = seeded(sub.add_parser("build", help="construct a tower and write it"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--levels", type=int, default=2)
    sp.add_argument("--strategy", default="auto", choices=["auto", "t1", "t2", "elliptic", "general"])
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_build)

    sp = seeded(sub.add_parser("verify", help="check the invariants of a tower file"))
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--samples", type=int, default=20)
    sp.set_defaults(func=cmd_verify)

    sp = seeded(sub.add_parser("embed", help="embed (or project) an element between levels"))
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--from", dest="src", type=int, required=True)
    sp.add_argument("--to", dest="dst", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--element")
    g.add_argument("--random", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_embed)

    sp = seeded(sub.add_parser("bench", help="time tower operations, CSV output"))
    sp.add_argument("--p", required=True, help="prime or comma-separated primes")
    sp.add_argument("--ell", required=True, help="prime or comma-separated primes")
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--strategy", default="auto")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--csv", default="-")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--baseline-max-level", type=int, default=5)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("export", help="re-export a tower file, optionally with more levels")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--levels", type=int, default=None)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("import", help="load a tower file and re-derive every level")
    sp.add_argument("--in", dest="inp", required=True)
    sp.set_defaults(func=cmd_import)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except VersionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERSION
    except TowerFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotInSubfield as exc:
        print(f"error: not in subfield: {exc}", file=sys.stderr)
        return EXIT_SUBFIELD
    except InvalidParameters as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except LadicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
