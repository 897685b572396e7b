import random

import numpy as np
import pytest

from ladic import conic, cyclodescent as cd
from ladic.errors import InvalidParameters
from ladic.fieldcore import (
    DensePoly,
    ModulusContext,
    PrimeField,
    cyclotomic,
    is_irreducible,
)
from ladic.liftpush import BiPoly
from oracles import minpoly_oracle


@pytest.fixture(scope="module", params=[(11, 7), (13, 5)], ids=["11-7", "13-5"])
def ctx(request):
    p, ell = request.param
    return cd.general_init(p, ell, random.Random(3))


def test_r_values():
    assert cd.general_init(11, 7, random.Random(0)).r == 3
    assert cd.general_init(13, 5, random.Random(0)).r == 4
    assert cd.general_init(7, 3, random.Random(0)).r == 1


def test_nonresidue_fraction_exhaustive():
    # every element of K_0 = F_{11^3}, against a table of 7th powers
    F = PrimeField(11)
    c = cd.general_init(11, 7, random.Random(0))
    ctx0 = ModulusContext(c.F0)
    elems = [DensePoly(F, [a, b, d]) for a in range(11) for b in range(11) for d in range(11)]
    elems = [e for e in elems if not e.is_zero()]
    sevenths = {ctx0.pow(e, 7).coeffs for e in elems}
    non = 0
    for e in elems:
        t = cd.nonresidue_test(e, ctx0, c.order, 7)
        assert t == (e.coeffs not in sevenths)
        non += t
    assert non * 7 == len(elems) * 6
    assert not cd.nonresidue_test(DensePoly(F, [1]), ctx0, c.order, 7)


def test_init_validates_y0():
    c = cd.general_init(11, 7, random.Random(0))
    ctx0 = ModulusContext(c.F0)
    seventh = ctx0.pow(c.y0, 7)
    with pytest.raises(InvalidParameters):
        cd.general_init(11, 7, y0=seventh, F0=c.F0)
    with pytest.raises(InvalidParameters):
        cd.general_init(11, 7, y0=DensePoly(PrimeField(11), [2]), F0=c.F0)  # lies in F_11
    with pytest.raises(InvalidParameters):
        cd.general_init(11, 11)


def test_k_arithmetic(ctx):
    rng = random.Random(1)
    for level in (0, 1, 2):
        one = cd.KiElement(ctx, level, ctx.one(level))
        for _ in range(5):
            a = cd.KiElement.random(ctx, level, rng)
            b = cd.KiElement.random(ctx, level, rng)
            assert a * (b + one) == a * b + a
            if not a.is_zero():
                assert a * a.inverse() == one
    # y_1^ell = y_0
    y1 = cd.KiElement(ctx, 1, ctx.y(1))
    y0 = cd.KiElement(ctx, 1, ctx.embed_up(ctx.y(0)[None], 1)[0])
    assert y1 ** ctx.ell == y0


def test_exponent_split(ctx):
    rng = random.Random(2)
    i = 2
    L = ctx.ell ** i
    for _ in range(100):
        E = rng.randrange(1, 50 * L)
        e, k = cd.split_exponent(E, i, ctx)
        direct = ctx.pow(ctx.y(i), E)
        y0k = np.zeros_like(direct)
        y0k[0] = ctx.pow(ctx.y(0), k)[0]  # y_0 = y_i^L, so y_0^k sits on y_i^0
        split = ctx.mul(ctx.pow(ctx.y(i), e), y0k)
        assert np.array_equal(direct, split)


def test_x0_is_trace(ctx):
    x0 = cd.xi_element(ctx, 0)
    assert ctx.k0_is_constant(x0[None])
    tr = sum(ctx.pow(ctx.y(0), ctx.p ** j) for j in range(ctx.r)) % ctx.p
    assert np.array_equal(x0, tr)


def test_xi_is_trace_of_yi(ctx):
    i = 1
    L = ctx.ell ** i
    tr = sum(cd.y_power(ctx, i, ctx.p ** (L * j)) for j in range(ctx.r)) % ctx.p
    assert np.array_equal(cd.xi_element(ctx, i), tr)


def _eval_in_K(ctx, Q, x, level):
    acc = np.zeros_like(x)
    one = ctx.one(level)
    for c in reversed(Q.coeffs):
        acc = (ctx.mul(acc, x) + c * one) % ctx.p
    return acc


def test_descent_levels(ctx):
    for i in (1, 2):
        data = cd.descend(ctx, i)
        Q = data.Qi
        assert Q.degree == ctx.ell ** i and is_irreducible(Q)
        assert not _eval_in_K(ctx, Q, cd.xi_element(ctx, i), i).any()
        if i == 1:
            # against the linear-algebra minimal polynomial of x_1 over F_p
            assert Q == minpoly_oracle(ctx, cd.xi_element(ctx, 1))
        for j, Qij in data.Q.items():
            assert Qij.shape[0] - 1 == ctx.ell ** (i - j)


def test_r2_matches_conic():
    # p = 5, ell = 3: K_0 = F_25, y_0 = zeta has norm 1 and is not a cube,
    # x_i = y_i + 1/y_i and Q_i = P_{3^i} - x_0 with x_0 = zeta + zeta^2 = -1
    F = PrimeField(5)
    F0 = cyclotomic(3, F)
    c = cd.general_init(5, 3, y0=DensePoly(F, [0, 1]), F0=F0)
    assert c.r == 2
    x0 = cd.xi_element(c, 0)
    assert x0[0, 0] == 4 and not x0[0, 1]
    init = conic.T2Init(conic.ConicParams(F, 4 * 4 - 4), 4, 3)
    for i in (1, 2, 3):
        assert cd.descend(c, i).Qi == conic.t2_Qi(init, i)


def test_psi_roundtrip_and_multiplicative(ctx):
    rng = random.Random(4)
    for i in (1, 2):
        data = cd.descend(ctx, i)
        # x_i goes to the class of X
        img = cd.psi_apply(ctx, data, cd.xi_element(ctx, i))
        assert cd.k0poly_to_fp(ctx, img) == DensePoly(ctx.field, [0, 1])
        for _ in range(10):
            a = cd.KiElement.random(ctx, i, rng)
            b = cd.KiElement.random(ctx, i, rng)
            wa, wb = cd.psi_apply(ctx, data, a), cd.psi_apply(ctx, data, b)
            assert np.array_equal(cd.psi_invert(ctx, data, wa), a.coeffs)
            wab = cd.psi_apply(ctx, data, a * b)
            prod = ctx.prem(ctx.pmul(wa, wb), cd.fp_to_k0poly(ctx, data.Qi))
            assert np.array_equal(cd._ktrim(wab), cd._ktrim(prod))


def test_general_lift_push(ctx):
    rng = random.Random(5)
    prev = None
    ell = ctx.ell
    for i in (1, 2):
        data = cd.descend(ctx, i)
        n = ell ** (i - 1)
        for _ in range(10):
            A = BiPoly.random(ctx.field, n, ell, rng)
            a = cd.general_lift(A, ctx, data, prev)
            assert a.degree < ell ** i
            assert cd.general_push(a, ctx, data, prev, n) == A
        prev = data
