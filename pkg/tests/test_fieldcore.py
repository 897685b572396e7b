import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ladic.errors import InvalidParameters, IterationCapExceeded, ZeroElementError
from ladic.fieldcore import (
    DensePoly,
    ModulusContext,
    PrimeField,
    compiled_available,
    cyclotomic,
    factor_equal_degree,
    is_irreducible,
    is_quadratic_residue,
    minpoly_in_quotient,
    modpow,
    multiplicative_order,
    poly_divrem,
    poly_gcd,
    poly_mul,
    poly_xgcd,
    series_inverse,
    set_backend,
)
from ladic.fieldcore import _backend
from ladic.fieldcore.factor import compose_mod, minpoly_from_powers


def schoolbook(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and not out[-1]:
        out.pop()
    return out


def long_division(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = (a[k + j] - c * y) % p
    r = a[:len(b) - 1]
    while r and not r[-1]:
        r.pop()
    while q and not q[-1]:
        q.pop()
    return q, r


def P(p, coeffs):
    return DensePoly(PrimeField(p), coeffs)


# field arithmetic

def test_field_examples():
    F7, F5 = PrimeField(7), PrimeField(5)
    assert F7(3) + F7(5) == F7(1)
    assert F7(3).inverse() == F7(5)
    assert F5(2) ** 6 == F5(4)
    assert F7(6) / F7(3) == F7(2)


def test_field_rejects_bad_moduli():
    for bad in (1, 2, 4, 9, 15):
        with pytest.raises(InvalidParameters):
            PrimeField(bad)


def test_division_by_zero_is_distinct():
    F = PrimeField(11)
    with pytest.raises(ZeroDivisionError):
        F(3) / F(0)


def test_quadratic_residues():
    F5, F7 = PrimeField(5), PrimeField(7)
    assert is_quadratic_residue(F5(4))
    assert not is_quadratic_residue(F5(2))
    assert not is_quadratic_residue(F7(3))
    with pytest.raises(ZeroElementError):
        is_quadratic_residue(F7(0))
    for p in (5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        assert all(is_quadratic_residue(PrimeField(p)(a)) == (a in squares) for a in range(1, p))


def test_multiplicative_order_examples():
    assert multiplicative_order(11, 7) == 3
    assert multiplicative_order(13, 5) == 4
    assert multiplicative_order(7, 3) == 1


# polynomials

def test_poly_examples():
    assert P(5, [1, 1]) * P(5, [1, 1]) == P(5, [1, 2, 1])
    assert (P(5, [1, 1]) * P(5, [])).is_zero()
    assert poly_divrem(P(5, [0, 0, 0, 1]), P(5, [0, 0, 1])) == (P(5, [0, 1]), P(5, []))
    assert poly_divrem(P(3, [1, 0, 1]), P(3, [1, 1])) == (P(3, [2, 1]), P(3, [2]))
    a, b = P(5, [1, 2]), P(5, [1, 0, 3])
    assert poly_divrem(a, b) == (P(5, []), a)
    g, _, _ = poly_xgcd(P(5, [-1, 0, 1]), P(5, [-1, 1]))
    assert g == P(5, [-1, 1])


def test_zero_divisor_rejected():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(P(5, [1, 2]), P(5, []))


@pytest.mark.parametrize("p", [5, 101, 2 ** 31 - 1])
@pytest.mark.parametrize("n", [1, 7, 50, 200, 700])
def test_mul_matches_schoolbook(p, n):
    rng = random.Random(n * p)
    a = [rng.randrange(p) for _ in range(n)]
    b = [rng.randrange(p) for _ in range(n + 3)]
    assert list(poly_mul(P(p, a), P(p, b)).coeffs) == schoolbook(a, b, p)


@pytest.mark.parametrize("p", [7, 101, 2 ** 31 - 1])
@pytest.mark.parametrize("sizes", [(10, 3), (90, 70), (300, 100), (500, 20)])
def test_divrem_matches_long_division(p, sizes):
    rng = random.Random(sum(sizes))
    a = [rng.randrange(p) for _ in range(sizes[0])]
    b = [rng.randrange(p) for _ in range(sizes[1] - 1)] + [1 + rng.randrange(p - 1)]
    q, r = poly_divrem(P(p, a), P(p, b))
    assert (list(q.coeffs), list(r.coeffs)) == long_division(a, b, p)


@pytest.mark.skipif(not compiled_available(), reason="compiled kernels not built")
@pytest.mark.parametrize("p", [5, 65537])
def test_backends_agree(p):
    rng = random.Random(p)
    for n in (3, 40, 130, 450):
        a = [rng.randrange(p) for _ in range(2 * n)]
        b = [rng.randrange(p) for _ in range(n)] + [1]
        res = {}
        for mode in ("compiled", "python"):
            prev = set_backend(mode)
            try:
                res[mode] = (_backend.mul(a, b, p), _backend.divrem(a, b, p), _backend.xgcd(a, b, p))
            finally:
                set_backend(prev)
        assert res["compiled"] == res["python"]


polys = st.lists(st.integers(0, 100), max_size=40)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_xgcd_bezout(a, b):
    p = 101
    A, B = P(p, a), P(p, b)
    if A.is_zero() and B.is_zero():
        with pytest.raises(ValueError):
            poly_xgcd(A, B)
        return
    g, u, v = poly_xgcd(A, B)
    assert g.lc == 1
    assert u * A + v * B == g
    assert (A % g).is_zero() and (B % g).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    A, B, C = P(101, a), P(101, b), P(101, c)
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)


def test_coprime_xgcd_gives_inverse():
    a, b = P(7, [1, 2, 3]), P(7, [3, 0, 0, 1])
    g, u, _ = poly_xgcd(a, b)
    assert g == P(7, [1])
    assert (u * a) % b == P(7, [1])


# quotient rings

@pytest.mark.parametrize("p", [5, 101])
def test_series_inverse(p):
    rng = random.Random(p)
    f = [1 + rng.randrange(p - 1)] + [rng.randrange(p) for _ in range(30)]
    g = series_inverse(f, 40, p)
    prod = schoolbook(f, g, p)[:40]
    assert prod == [1] + [0] * 39


@pytest.mark.parametrize("p,n", [(5, 1), (5, 9), (101, 64), (101, 200), (2 ** 31 - 1, 81)])
def test_modulus_context_matches_oracle(p, n):
    rng = random.Random(n)
    Q = [rng.randrange(p) for _ in range(n)] + [1]
    ctx = ModulusContext(P(p, Q))
    rec = ctx.reciprocal()
    rq = list(reversed(Q))
    assert schoolbook(rq, rec, p)[:n] == [1] + [0] * (n - 1)
    for _ in range(5):
        a = [rng.randrange(p) for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n)]
        assert ctx.mul_list(a, b) == long_division(schoolbook(a, b, p), Q, p)[1]
        big = [rng.randrange(p) for _ in range(5 * n + 3)]
        assert ctx.reduce_list(big) == long_division(big, Q, p)[1]


def test_modpow_examples():
    F = PrimeField(7)
    Q = DensePoly(F, [3, 0, 0, 1])  # X^3 + 3: 3 is not a cube mod 7
    assert is_irreducible(Q)
    ctx = ModulusContext(Q)
    X = DensePoly.x(F)
    assert modpow(X, 0, ctx) == DensePoly.constant(F, 1)
    assert modpow(X, 7 ** 3, ctx) == X


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_modpow_euler_criterion(p):
    # in F_p[X]/<X^2 - D>, (X^2)^((p-1)/2) = D^((p-1)/2) is +1 exactly on residues
    squares = {x * x % p for x in range(1, p)}
    for d in range(1, p):
        ctx = ModulusContext(P(p, [-d, 0, 1]))
        r = modpow(P(p, [0, 1]), p - 1, ctx)
        assert (r == P(p, [1])) == (d in squares)


def test_zero_inverse_raises():
    ctx = ModulusContext(P(5, [2, 0, 1]))
    with pytest.raises(ZeroElementError):
        ctx.inv(P(5, []))


# irreducibility and factoring

def _exhaustively_irreducible(coeffs, p):
    n = len(coeffs) - 1
    target = P(p, coeffs)
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if (target % P(p, list(tail) + [1])).is_zero():
                return False
    return True


@pytest.mark.parametrize("p", [3, 5])
def test_rabin_matches_exhaustive_search(p):
    for n in (2, 3, 4):
        for tail in itertools.product(range(p), repeat=n):
            coeffs = list(tail) + [1]
            assert is_irreducible(P(p, coeffs)) == _exhaustively_irreducible(coeffs, p)


def test_irreducibility_examples():
    assert is_irreducible(P(3, [1, 0, 1]))
    assert not is_irreducible(P(5, [-1, 0, 1]))
    assert is_irreducible(P(5, [-1, -3, 0, 1]))
    with pytest.raises(InvalidParameters):
        is_irreducible(P(5, [3]))


def test_cyclotomic():
    F = PrimeField(11)
    assert cyclotomic(3, F) == DensePoly(F, [1, 1, 1])
    assert cyclotomic(5, F) == DensePoly(F, [1] * 5)
    with pytest.raises(InvalidParameters):
        cyclotomic(11, F)
    with pytest.raises(InvalidParameters):
        cyclotomic(9, F)


def test_phi7_mod_11_two_cubics():
    F = PrimeField(11)
    phi = cyclotomic(7, F)
    G = factor_equal_degree(phi, 3, random.Random(1))
    assert G.degree == 3 and is_irreducible(G)
    H, r = divmod(phi, G)
    assert r.is_zero() and is_irreducible(H) and G * H == phi


def test_phi3_mod_7_roots():
    F = PrimeField(7)
    G = factor_equal_degree(cyclotomic(3, F), 1, random.Random(3))
    assert G in (DensePoly(F, [-2, 1]), DensePoly(F, [-4, 1]))


def test_factor_equal_degree_edge_cases():
    F = PrimeField(5)
    irr = DensePoly(F, [-1, -3, 0, 1])
    assert factor_equal_degree(irr, 3) == irr
    with pytest.raises(InvalidParameters):
        factor_equal_degree(DensePoly(F, [1, 1, 1, 1, 1]), 3)
    # X^4 - 1 splits into linear factors, not quadratics
    with pytest.raises(InvalidParameters):
        factor_equal_degree(DensePoly(F, [4, 0, 0, 0, 1]), 2)
    with pytest.raises(IterationCapExceeded):
        factor_equal_degree(DensePoly(F, [2, 0, 1]) * DensePoly(F, [3, 0, 1]), 2,
                            random.Random(0), cap=0)


def test_compose_mod_matches_horner():
    rng = random.Random(5)
    p = 101
    Q = P(p, [rng.randrange(p) for _ in range(40)] + [1])
    ctx = ModulusContext(Q)
    a = [rng.randrange(p) for _ in range(60)]
    b = [rng.randrange(p) for _ in range(40)]
    acc = P(p, [])
    for c in reversed(a):
        acc = ctx.mul(acc, P(p, b)) + c
    assert compose_mod(a, b, ctx) == list(acc.coeffs)


def test_minpoly_examples():
    F = PrimeField(5)
    Q = DensePoly(F, [2, 0, 1])
    ctx = ModulusContext(Q)
    assert minpoly_in_quotient(DensePoly.x(F), ctx) == Q
    assert minpoly_in_quotient(DensePoly.constant(F, 3), ctx) == DensePoly(F, [-3, 1])
    rng = random.Random(0)
    for _ in range(20):
        a = DensePoly(F, [rng.randrange(5), rng.randrange(5)])
        m = minpoly_in_quotient(a, ctx)
        assert m.degree <= 2 and m.lc == 1
        acc = DensePoly(F, [])
        for c in reversed(m.coeffs):
            acc = ctx.mul(acc, a) + c
        assert acc.is_zero()
    assert minpoly_in_quotient(DensePoly(F, [3, 4]), ctx) == DensePoly(F, [1, 4, 1])


def test_minpoly_from_powers_detects_dependency():
    p = 7
    vecs = [[1, 0], [0, 1], [3, 0]]  # the third is 3 times the first
    assert minpoly_from_powers(iter(vecs), p, 2) == [4, 0, 1]
