import random

import pytest

from ladic.errors import InvalidParameters
from ladic.fieldcore import DensePoly, ModulusContext, PrimeField, poly_gcd
from ladic.liftpush import (
    BiPoly,
    FiberRelation,
    compose,
    decompose,
    lift_fiber,
    push_fiber,
    small_inverse,
    t1_lift,
    t1_push,
)


def definition(P, f, g, n):
    F = f.field
    acc = DensePoly(F, [])
    for i, row in enumerate(P.rows):
        if row:
            acc = acc + DensePoly(F, list(row)) * f ** i * g ** (n - 1 - i)
    return acc


def random_relation(F, ell, rng, const_g=False):
    while True:
        f = DensePoly(F, [rng.randrange(F.p) for _ in range(ell)] + [1])
        if const_g:
            g = DensePoly(F, [1 + rng.randrange(F.p - 1)])
        else:
            g = DensePoly(F, [rng.randrange(F.p) for _ in range(ell)])
        if not g.is_zero() and poly_gcd(f, g).degree == 0:
            return FiberRelation(f, g)


F5 = PrimeField(5)


def test_compose_examples():
    f = DensePoly(F5, [0, -3, 0, 1])
    one = DensePoly(F5, [1])
    P = BiPoly(F5, [[0, 1], [1]], 3, 2)  # Y + X
    assert compose(P, f, one, 2) == DensePoly(F5, [0, -2, 0, 1])
    g = DensePoly(F5, [2, 1])
    assert compose(BiPoly.x(F5, 2, 3), f, g, 2) == f
    Q = BiPoly(F5, [[1, 2, 3]], 3, 1)
    assert compose(Q, f, g, 1) == DensePoly(F5, [1, 2, 3])


def test_decompose_examples():
    rel = FiberRelation(DensePoly(F5, [0, -3, 0, 1]), DensePoly(F5, [1]))
    assert decompose(DensePoly(F5, [0, -2, 0, 1]), rel, 2) == BiPoly(F5, [[0, 1], [1]], 3, 2)
    assert decompose(DensePoly(F5, [4, 0, 1]), rel, 1) == BiPoly(F5, [[4, 0, 1]], 3, 1)


def test_relation_validation():
    with pytest.raises(InvalidParameters):
        FiberRelation(DensePoly(F5, [0, 0, 2]), DensePoly(F5, [1]))
    with pytest.raises(InvalidParameters):
        FiberRelation(DensePoly(F5, [0, 0, 1]), DensePoly(F5, [0, 1]))  # common factor Y
    rel = FiberRelation(DensePoly(F5, [1, 0, 1]), DensePoly(F5, [1, 1]))
    assert (rel.h * rel.g) % rel.f == DensePoly(F5, [1])


@pytest.mark.parametrize("ell", [3, 5, 7])
@pytest.mark.parametrize("power", [1, 2, 3])
def test_compose_decompose_roundtrip(ell, power):
    n = ell ** power
    F = PrimeField(101)
    rng = random.Random(ell * 10 + power)
    trials = 50 if n <= 25 else 8
    for k in range(trials):
        rel = random_relation(F, ell, rng, const_g=(k % 4 == 0))
        P = BiPoly.random(F, n, ell, rng)
        Q = compose(P, rel.f, rel.g, n)
        if n <= 25:
            assert Q == definition(P, rel.f, rel.g, n)
        assert decompose(Q, rel, n) == P
        R = DensePoly(F, [rng.randrange(101) for _ in range(ell * n)])
        assert compose(decompose(R, rel, n), rel.f, rel.g, n) == R


def test_decompose_rejects_high_degree():
    rel = FiberRelation(DensePoly(F5, [1, 0, 1]), DensePoly(F5, [1]))
    with pytest.raises(InvalidParameters):
        decompose(DensePoly(F5, [1] * 7), rel, 3)


def test_small_inverse():
    rng = random.Random(3)
    p = 101
    for dg in (0, 1, 3, 6):
        Q = [rng.randrange(p) for _ in range(60)] + [1]
        g = [rng.randrange(p) for _ in range(dg)] + [1 + rng.randrange(p - 1)]
        F = PrimeField(p)
        if poly_gcd(DensePoly(F, g), DensePoly(F, Q)).degree:
            continue
        a = small_inverse(g, Q, p)
        assert (DensePoly(F, a) * DensePoly(F, g)) % DensePoly(F, Q) == DensePoly(F, [1])


def test_t1_lift_layout():
    A = BiPoly(F5, [[1, 2, 3], [4, 0, 1]], 3, 2)
    assert t1_lift(A, 3, 2) == DensePoly(F5, [1, 2, 3, 4, 0, 1])
    assert t1_push(DensePoly(F5, [1, 2, 3, 4, 0, 1]), 3, 2) == A
    c = BiPoly.constant(F5, 3, 2, 3)
    assert t1_lift(c, 3, 2) == DensePoly(F5, [3])


def test_t1_agrees_with_fiber_lift():
    # radical relation f = Y^3, g = 1 over a level of size 27
    F = PrimeField(7)
    ell, n = 3, 27
    rel = FiberRelation(DensePoly(F, [0, 0, 0, 1]), DensePoly(F, [1]))
    assert rel.is_radical()
    S = ModulusContext(DensePoly(F, [-3] + [0] * 80 + [1]))
    rng = random.Random(5)
    for _ in range(100):
        A = BiPoly.random(F, n, ell, rng)
        assert t1_lift(A, ell, n) == lift_fiber(A, rel, S, n)
        a = t1_lift(A, ell, n)
        assert t1_push(a, ell, n) == push_fiber(a, rel, S, n)


def test_fiber_lift_push_on_t2_level():
    # level 1 -> 2 of the T2 tower for p = 5, ell = 3, alpha = 1
    from ladic import conic
    init = conic.T2Init(conic.ConicParams(F5, 1 - 4), 1, 3)
    rel = conic.t2_relation(init)
    Q1, Q2 = conic.t2_Qi(init, 1), conic.t2_Qi(init, 2)
    prev, S = ModulusContext(Q1), ModulusContext(Q2)
    n = 3
    tc = [list(c) for c in rel.t_coeffs()]
    # lift(X) is a root of Q_1
    x = lift_fiber(BiPoly.x(F5, n, 3), rel, S, n)
    acc = DensePoly(F5, [])
    for c in reversed(Q1.coeffs):
        acc = S.mul(acc, x) + c
    assert acc.is_zero()
    c = BiPoly.constant(F5, 4, n, 3)
    assert lift_fiber(c, rel, S, n) == DensePoly(F5, [4])
    assert push_fiber(DensePoly(F5, [4]), rel, S, n) == c
    rng = random.Random(9)
    for _ in range(30):
        A, B = BiPoly.random(F5, n, 3, rng), BiPoly.random(F5, n, 3, rng)
        a, b = lift_fiber(A, rel, S, n), lift_fiber(B, rel, S, n)
        assert push_fiber(a, rel, S, n) == A
        assert S.mul(a, b) == lift_fiber(A.mul_mod(B, tc, prev), rel, S, n)
        # a level-1 element pushes to the Y^0 column only
        sub = BiPoly.from_column(DensePoly(F5, [rng.randrange(5) for _ in range(n)]), n, 3)
        assert push_fiber(lift_fiber(sub, rel, S, n), rel, S, n).in_subfield()
