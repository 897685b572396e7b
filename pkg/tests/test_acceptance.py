"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line via record()."""

import random
import statistics
import time

import numpy as np
import pytest

from conftest import FIXTURES, record, tower
from ladic import conic, cyclodescent as cd, elliptic, serialize
from ladic.baseline import baseline_embed
from ladic.conic import ConicParams
from ladic.errors import CorruptStateError, InvalidParameters
from ladic.fieldcore import DensePoly, PrimeField, is_irreducible
from ladic.liftpush import BiPoly, FiberRelation, compose, decompose
from ladic.tower import Tower
from oracles import brute_count, brute_points, minpoly_oracle


def _check(n, failures, summary):
    ok = not failures
    record(n, ok, summary if ok else f"{summary}; first failure: {failures[0]}")
    assert ok, failures[:5]


def test_c01_irreducibility():
    fails, t0 = [], time.perf_counter()
    for p, ell, s, top in FIXTURES:
        t = Tower.create(p, ell, s, seed=1)  # fresh tower so the build is timed too
        for i in range(top + 1):
            Q = t.level(i).Q
            if Q.degree != ell ** i or not is_irreducible(Q):
                fails.append(f"({p},{ell},{s}) level {i}")
    dt = time.perf_counter() - t0
    if dt >= 120:
        fails.append(f"took {dt:.1f}s")
    _check(1, fails, f"8 fixtures, deg Q_i = ell^i and Rabin-irreducible, {dt:.1f}s")


def test_c02_lift_push():
    fails, count = [], 0
    for p, ell, s, top in FIXTURES:
        t = tower(p, ell, s)
        rng = random.Random(2)
        for i in range(1, top + 1):
            for _ in range(100):
                A, B = t.random_bipoly(i, rng), t.random_bipoly(i, rng)
                a, b = t.lift(A, i), t.lift(B, i)
                if t.push(a) != A:
                    fails.append(f"({p},{ell},{s}) level {i}: push(lift(A)) != A")
                # lift(AB) with AB reduced modulo <Q_{i-1}, T_i>
                if t.lift(t.bi_mul(A, B, i), i) != a * b:
                    fails.append(f"({p},{ell},{s}) level {i}: lift not multiplicative")
                count += 1
    _check(2, fails, f"{count} element pairs: push(lift(A)) = A and lift(AB) = lift(A)lift(B)")


def test_c03_embedding():
    fails = []
    rng = random.Random(3)
    for p, ell, s, top in FIXTURES:
        t = tower(p, ell, s)
        for i in range(1, top + 1):
            prev = t.level(i - 1).Q
            x = t.embed(t.gen(i - 1), i)
            acc = t.element(i, [])
            for c in reversed(prev.coeffs):
                acc = acc * x + c
            if not acc.is_zero():
                fails.append(f"({p},{ell},{s}) level {i}: embed(x_(i-1)) is not a root")
        for _ in range(10):
            a = t.random_element(0, rng) if top < 3 else t.random_element(1, rng)
            lo = a.level
            hi = min(lo + 3, top)
            mid = lo + 1
            if t.embed(t.embed(a, mid), hi) != t.embed(a, hi):
                fails.append(f"({p},{ell},{s}): embed o embed != embed")
            for k in range(lo, hi + 1):
                if t.project(t.embed(a, hi), k) != t.embed(a, k):
                    fails.append(f"({p},{ell},{s}): project o embed != id")
    _check(3, fails, "embed(x_(i-1)) roots Q_(i-1); embed o embed = embed over 3 levels; project o embed = id")


def _int_pell(n):
    prev, cur = [2], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for k, c in enumerate(prev):
            nxt[k] -= c
        prev, cur = cur, nxt
    return cur


def test_c04_conic():
    fails = []
    p = 101
    F = PrimeField(p)
    prm = ConicParams(F, 2)  # 2 is a non-residue mod 101
    rng = random.Random(4)
    O = prm.neutral()

    def add(a, b):
        return conic.conic_add(a, b, prm)

    for _ in range(1000):
        P, Q, R = (prm.random_point(rng) for _ in range(3))
        if add(add(P, Q), R) != add(P, add(Q, R)) or add(P, Q) != add(Q, P):
            fails.append(f"associativity/commutativity at {P}, {Q}, {R}")
        if add(P, O) != P or add(P, conic.conic_neg(P, prm)) != O or not prm.contains(add(P, Q)):
            fails.append(f"identity/inverse/closure at {P}")
    for _ in range(100):
        P = prm.random_point(rng)
        if conic.conic_mul(p + 1, P, prm) != O:
            fails.append(f"[p+1]{P} != O")
        acc = O
        for n in range(1, 51):
            acc = add(acc, P)
            if conic.ladder_x(n, P.x, p) != acc.x:
                fails.append(f"ladder [{n}]{P}")
                break
    # Laurent identity over Z: Y^n P_n(Y + 1/Y) = Y^(2n) + 1, by integer polynomial arithmetic
    for n in range(0, 51):
        Pn = _int_pell(n)
        # Y^n (Y + 1/Y)^k = Y^(n-k) (Y^2 + 1)^k
        out = [0] * (2 * n + 1)
        binom = [1]
        for k, c in enumerate(Pn):
            if k:
                binom = [a + b for a, b in zip([0] + binom, binom + [0])]
            for m, b in enumerate(binom):
                out[n - k + 2 * m] += c * b
        if out != [1] + [0] * (2 * n - 1) + [1] and not (n == 0 and out == [2]):
            fails.append(f"Laurent identity at n={n}")
    _check(4, fails, "group axioms on 1000 triples, [p+1]P = O on 100 points, ladder = repeated addition n <= 50, "
                     "Laurent identity n <= 50")


def test_c05_pell_formula():
    fails = []
    for p in (5, 7, 101):
        F = PrimeField(p)
        for n in range(0, 201):
            if conic.pell_poly(n, F) != conic.pell_poly_recurrence(n, F):
                fails.append(f"p={p} n={n}")
    _check(5, fails, "P_n formula = recurrence for n <= 200 over F_5, F_7, F_101")


def test_c06_elliptic():
    fails = []
    rng = random.Random(6)
    primes = [q for q in range(5, 200) if all(q % d for d in range(2, q))]
    curves = []
    while len(curves) < 50:
        q = rng.choice(primes)
        a, b = rng.randrange(q), rng.randrange(q)
        if (4 * a ** 3 + 27 * b * b) % q:
            curves.append(elliptic.Curve(PrimeField(q), a, b))
    limit = elliptic.EXHAUSTIVE_COUNT_LIMIT
    try:
        for E in curves:
            N = brute_count(E)
            elliptic.EXHAUSTIVE_COUNT_LIMIT = limit
            direct = elliptic.point_count(E)
            elliptic.EXHAUSTIVE_COUNT_LIMIT = 0  # force baby-step giant-step
            bsgs = elliptic.point_count(E, random.Random(1))
            if not direct == bsgs == N:
                fails.append(f"count on {E}: {direct}, {bsgs} vs {N}")
    finally:
        elliptic.EXHAUSTIVE_COUNT_LIMIT = limit
    for p, ell, s, _ in FIXTURES:
        if s != "elliptic":
            continue
        init = tower(p, ell, s).init
        cyc = init.cycle
        E0 = init.curve
        for st in cyc.steps:
            E, E2 = st.domain, st.codomain
            if brute_count(E) != brute_count(E2):
                fails.append(f"Velu changed #E at ({p},{ell})")
            pts = brute_points(E)
            for P in pts:
                if st.h(P.x) == 0 and not st.apply(P).is_infinity():
                    fails.append(f"kernel point {P} not sent to infinity")
            for _ in range(100):
                P, Q = rng.choice(pts), rng.choice(pts)
                if st.apply(elliptic.ec_add(P, Q, E)) != elliptic.ec_add(st.apply(P), st.apply(Q), E2):
                    fails.append(f"morphism fails at ({p},{ell})")
                    break
        if cyc.steps[-1].codomain != E0 or cyc.steps[-1].codomain.j_invariant() != E0.j_invariant():
            fails.append(f"cycle at ({p},{ell}) does not close")
        for a, b in zip(cyc.steps, cyc.steps[1:]):
            if a.codomain != b.domain:
                fails.append("cycle steps not chained")
    _check(6, fails, "50 counts match exhaustive, Velu keeps #E, kernel -> infinity, morphism on 100 pairs, "
                     "cycle closes with matching j")


def test_c07_general():
    fails = []
    rng = random.Random(7)
    for p, ell, s, top in FIXTURES:
        if s != "general":
            continue
        t = tower(p, ell, s)
        ctx = t.init
        data = t.descent(1)
        if data.Qi != minpoly_oracle(ctx, cd.xi_element(ctx, 1)) or data.Qi != t.level(1).Q:
            fails.append(f"({p},{ell}): Q_(1,0) differs from the linear-algebra minpoly")
        for i in range(1, top + 1):
            data = t.descent(i)
            if not ctx.k0_is_constant(data.Q[0]):
                fails.append(f"({p},{ell}) level {i}: Q_i not F_p-rational")
            for _ in range(100 // top):
                a = cd.KiElement.random(ctx, i, rng)
                w = cd.psi_apply(ctx, data, a)
                if not np.array_equal(cd.psi_invert(ctx, data, w), a.coeffs):
                    fails.append(f"({p},{ell}) level {i}: psi roundtrip")
            for _ in range(20):
                # lift and push leave K_0 through k0poly_to_fp, which rejects non-rational data
                A = t.random_bipoly(i, rng)
                try:
                    if t.push(t.lift(A, i)) != A:
                        fails.append(f"({p},{ell}) level {i}: general lift/push roundtrip")
                except CorruptStateError as exc:
                    fails.append(f"({p},{ell}) level {i}: {exc}")
    _check(7, fails, "Q_(1,0) = linear-algebra minpoly at (11,7), (13,5); psi roundtrip on 100 elements; "
                     "outputs F_p-rational")


def test_c08_compose_decompose():
    fails, count = [], 0
    F = PrimeField(101)
    rng = random.Random(8)
    for ell in (3, 5, 7):
        for n in (ell, ell ** 2, ell ** 3):
            for k in range(50):
                while True:
                    f = DensePoly(F, [rng.randrange(101) for _ in range(ell)] + [1])
                    g = DensePoly(F, [1] if k % 5 == 0 else [rng.randrange(101) for _ in range(ell)])
                    try:
                        rel = FiberRelation(f, g)
                        break
                    except InvalidParameters:
                        continue  # gcd(f, g) != 1
                P = BiPoly.random(F, n, ell, rng)
                if decompose(compose(P, f, g, n), rel, n) != P:
                    fails.append(f"decompose(compose(P)) != P at ell={ell} n={n}")
                Q = DensePoly(F, [rng.randrange(101) for _ in range(ell * n)])
                if compose(decompose(Q, rel, n), f, g, n) != Q:
                    fails.append(f"compose(decompose(Q)) != Q at ell={ell} n={n}")
                count += 1
    _check(8, fails, f"{count} instances over (ell, n) in {{3,5,7}} x {{ell, ell^2, ell^3}}, both directions")


def _median(fn, setup, reps):
    times = []
    for _ in range(reps):
        arg = setup()
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


@pytest.mark.parametrize("fx", [(5, 3, "t2"), (101, 3, "elliptic")], ids=["5-3-t2", "101-3-elliptic"])
def test_c09_quasilinear(fx):
    p, ell, s = fx
    t = tower(p, ell, s)
    rng = random.Random(9)
    fails, norm = [], {}
    for i in range(6, 11):
        t.level(i)

        def lp(A, i=i):
            t.push(t.lift(A, i))

        lp(t.random_bipoly(i, rng))  # warm-up: gamma and modulus caches
        norm[i] = _median(lp, lambda i=i: t.random_bipoly(i, rng), 5) / ell ** i
    ratios = {i: norm[i] / norm[i - 1] for i in range(7, 11)}
    for i, r in ratios.items():
        if not 0.25 <= r <= 4:
            fails.append(f"level {i - 1}->{i} ratio {r:.2f}")
    lvl = 5
    a = t.random_element(1, rng)
    t_lift = _median(lambda x: t.embed(x, lvl), lambda: t.random_element(1, rng), 5)
    t0 = time.perf_counter()
    b = baseline_embed(t, a, lvl, rng)
    t_base = time.perf_counter() - t0
    if t_base < 2 * t_lift:
        fails.append(f"baseline {t_base:.3g}s not 2x slower than lift embed {t_lift:.3g}s")
    # the baseline image is a Frobenius conjugate of the canonical one
    conj, c = [], t.embed(a, lvl)
    for _ in range(ell):
        conj.append(c)
        c = c ** p
    if b not in conj:
        fails.append("baseline image is not a conjugate of the canonical embedding")
    text = ", ".join(f"{r:.2f}" for r in ratios.values())
    _check(9, fails, f"({p},{ell},{s}) levels 6-10 ratios [{text}]; level 5 baseline {t_base:.2f}s "
                     f"vs embed {t_lift * 1e3:.2f}ms")


def test_c10_export_import(tmp_path):
    fails = []
    for p, ell, s, top in FIXTURES:
        t = tower(p, ell, s)
        path = tmp_path / f"{p}-{ell}-{s}.json"
        serialize.dump(t, path, top)
        t2, top2 = serialize.load(path, strict=True)
        if top2 != top or serialize.tower_to_dict(t2, top) != serialize.tower_to_dict(t, top):
            fails.append(f"({p},{ell},{s}): roundtrip differs")
        for i in range(top + 1):
            if t2.level(i).Q != t.level(i).Q:
                fails.append(f"({p},{ell},{s}) level {i}: Q differs after reload")
        t3, _ = serialize.load(path, strict=False)
        for i in range(top + 1):
            rep = t3.verify_level(i, samples=5, rng=random.Random(i))
            if not rep.ok:
                fails.append(f"({p},{ell},{s}) level {i}: verify fails after reload")
    _check(10, fails, "export/import exact for 8 fixtures; verify passes after reload")
