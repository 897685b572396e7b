"""Irreducibility, Frobenius powers, equal-degree splitting and minimal polynomials."""

import math
import random as _random

import numpy as np

from . import _backend
from .field import PrimeField, is_prime, prime_factors
from .modulus import ModulusContext
from .poly import DensePoly, _trim, sub_lists
from ..errors import InvalidParameters, IterationCapExceeded

DEFAULT_ITERATION_CAP = 10 ** 6


def matmul_mod(a, b, p):
    """(a @ b) mod p for int64 arrays of residues."""
    m = a.shape[1]
    if m == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if m * (p - 1) ** 2 < 2 ** 63:
        return (a @ b) % p
    if p < 2 ** 31:
        # split b into limbs small enough that each partial product fits
        s = 62 - (m * (p - 1)).bit_length()
        mask = (1 << s) - 1
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        shift, rest = 1, b.copy()
        while rest.any():
            part = (a @ (rest & mask)) % p
            out = (out + part * shift) % p
            rest >>= s
            shift = shift * pow(2, s, p) % p
        return out
    prod = a.astype(object) @ b.astype(object)
    return np.asarray(prod % p, dtype=np.int64)


def compose_mod(a, b, ctx):
    """a(b) mod Q by Brent-Kung baby-step/giant-step (a, b coefficient lists)."""
    n, p = ctx.n, ctx.p
    a = _trim(list(a))
    if len(a) <= 1:
        return a
    b = ctx.reduce_list(b)
    m = max(1, math.isqrt(len(a) - 1) + 1)
    powers = [[1]]
    for _ in range(m - 1):
        powers.append(ctx.mul_list(powers[-1], b))
    giant = ctx.mul_list(powers[-1], b)
    baby = np.zeros((m, n), dtype=np.int64)
    for i, v in enumerate(powers):
        baby[i, :len(v)] = v
    t = -(-len(a) // m)
    coef = np.zeros((t, m), dtype=np.int64)
    coef.ravel()[:len(a)] = a
    blocks = matmul_mod(coef, baby, p)
    result = _trim(blocks[t - 1].tolist())
    for j in range(t - 2, -1, -1):
        result = ctx.mul_list(result, giant)
        low = blocks[j].tolist()
        if len(result) < len(low):
            result += [0] * (len(low) - len(result))
        result = _trim([(x + y) % p for x, y in zip(result, low)] + result[len(low):])
    return result


class Frobenius:
    """X^(p^k) mod Q for a fixed modulus, memoized per k."""

    def __init__(self, ctx):
        self.ctx = ctx
        self._cache = {1: ctx.pow_list([0, 1], ctx.p) if ctx.n > 1 else ctx.reduce_list([0, 1])}
        self._cache[0] = ctx.reduce_list([0, 1])

    def power(self, k):
        """The residue of X^(p^k)."""
        if k in self._cache:
            return self._cache[k]
        half = self.power(k // 2)
        a = compose_mod(half, half, self.ctx)
        if k & 1:
            a = self.apply(a)
        self._cache[k] = a
        return a

    def apply(self, a):
        """One Frobenius step: a^p = a(X^p) mod Q."""
        ctx = self.ctx
        if ctx.p.bit_length() <= 2 * math.isqrt(ctx.n) + 2:
            return ctx.pow_list(a, ctx.p)
        return compose_mod(a, self._cache[1], ctx)


def frobenius(ctx):
    if ctx._frob is None:
        ctx._frob = Frobenius(ctx)
    return ctx._frob


def is_irreducible(Q):
    """Rabin's test: X^(p^n) = X mod Q and gcd(X^(p^(n/t)) - X, Q) = 1 for primes t | n."""
    n = Q.degree
    if n < 1:
        raise InvalidParameters("irreducibility is defined for degree >= 1")
    if n == 1:
        return True
    p = Q.p
    ctx = ModulusContext(Q.monic())
    fr = frobenius(ctx)
    q = list(ctx.modulus.coeffs)
    for t in prime_factors(n):
        h = sub_lists(fr.power(n // t), [0, 1], p)
        if not h:
            return False
        g, _, _ = _backend.xgcd(q, h, p)
        if len(g) != 1:
            return False
    return fr.power(n) == [0, 1]


def cyclotomic(ell, field):
    """Phi_ell = 1 + X + ... + X^(ell-1) over the given field."""
    if isinstance(field, int):
        field = PrimeField(field)
    if not is_prime(ell):
        raise InvalidParameters(f"ell = {ell} is not prime")
    if ell == field.p:
        raise InvalidParameters("ell = p is excluded")
    return DensePoly._raw(field, [1] * ell)


def _random_poly(field, deg, rng):
    return DensePoly._raw(field, [rng.randrange(field.p) for _ in range(deg)])


def factor_equal_degree(F, r, rng=None, cap=DEFAULT_ITERATION_CAP):
    """One monic irreducible factor of degree r of F (Cantor-Zassenhaus).

    F must be squarefree with every irreducible factor of degree r.
    """
    rng = rng or _random.Random()
    F = F.monic()
    field, p = F.field, F.p
    if r < 1 or F.degree < r or F.degree % r:
        raise InvalidParameters(f"degree {F.degree} is not a positive multiple of r = {r}")
    ctx = ModulusContext(F)
    if F.degree == r:
        return F
    fr = frobenius(ctx)
    if fr.power(r) != [0, 1]:
        raise InvalidParameters(f"F has an irreducible factor whose degree does not divide {r}")
    for t in prime_factors(r):
        g, _, _ = _backend.xgcd(list(F.coeffs), sub_lists(fr.power(r // t), [0, 1], p), p)
        if len(g) != 1:
            raise InvalidParameters(f"F has an irreducible factor of degree properly dividing {r}")
    e = (p ** r - 1) // 2
    for _ in range(cap):
        if F.degree == r:
            return F
        a = _random_poly(field, F.degree, rng)
        if a.degree < 1:
            continue
        g, _, _ = _backend.xgcd(list(F.coeffs), list(a.coeffs), p)
        if len(g) == 1:
            b = ctx.pow_list(list(a.coeffs), e)
            b = sub_lists(b, [1], p)
            if not b:
                continue
            g, _, _ = _backend.xgcd(list(F.coeffs), b, p)
        if 1 < len(g) <= F.degree:
            G = DensePoly._raw(field, g)
            H = F // G
            F = G if G.degree <= H.degree else H.monic()
            ctx = ModulusContext(F)
    raise IterationCapExceeded(f"equal-degree splitting did not finish within {cap} trials")


class _Echelon:
    """Incremental row reduction over F_p, tracking each row as a combination of inputs."""

    def __init__(self, p, dim):
        self.p = p
        self.dim = dim
        self.rows = []  # (pivot, row, combination)

    def add(self, v, index):
        """Reduce v; return None if independent, else the combination giving v."""
        p = self.p
        v = list(v) + [0] * (self.dim - len(v))
        comb = {index: 1}
        for pivot, row, rc in self.rows:
            c = v[pivot]
            if c:
                for j in range(pivot, self.dim):
                    if row[j]:
                        v[j] = (v[j] - c * row[j]) % p
                for k, x in rc.items():
                    comb[k] = (comb.get(k, 0) - c * x) % p
        pivot = next((j for j, c in enumerate(v) if c), None)
        if pivot is None:
            return comb
        inv = pow(v[pivot], p - 2, p)
        v = [c * inv % p for c in v]
        comb = {k: x * inv % p for k, x in comb.items()}
        self.rows.append((pivot, v, comb))
        return None


def minpoly_from_powers(powers, p, dim):
    """Minimal polynomial coefficients from the vectors of 1, a, a^2, ... (an iterable).

    Stops at the first linear dependency; returns a monic coefficient list.
    """
    ech = _Echelon(p, dim)
    for k, v in enumerate(powers):
        comb = ech.add(v, k)
        if comb is not None:
            out = [0] * (k + 1)
            for i, c in comb.items():
                out[i] = c
            return _trim(out)
    return None


def minpoly_in_quotient(alpha, ctx, d=None):
    """Monic minimal polynomial over F_p of the residue class of alpha modulo Q."""
    n = ctx.n
    d = n if d is None else d
    base = ctx.reduce_list(list(alpha.coeffs))

    def powers():
        v = [1]
        for _ in range(d + 1):
            yield v
            v = ctx.mul_list(v, base)

    coeffs = minpoly_from_powers(powers(), ctx.p, n)
    if coeffs is None:
        raise InvalidParameters(f"no relation found up to degree {d}")
    return DensePoly._raw(ctx.field, coeffs)
