"""Rational-function composition and decomposition, and lift/push for fiber-shaped steps.

A tower step of fiber shape is T(X, Y) = f(Y) - X g(Y) with f monic of degree
ell and deg g < ell.  Level i-1 elements are polynomials in X (degree < n)
and level i elements are polynomials in Y (degree < ell*n).
"""

import random as _random

from .fieldcore import _backend
from .fieldcore.modulus import ModulusContext
from .fieldcore.poly import DensePoly, _trim, add_lists, divrem_lists, invmod_lists, sub_lists
from .errors import CorruptStateError, InvalidParameters


class FiberRelation:
    """The pair (f, g) of one tower step, with h = g^-1 mod f cached."""

    __slots__ = ("f", "g", "ell", "h")

    def __init__(self, f, g):
        if f.lc != 1:
            raise InvalidParameters("f must be monic")
        if g.is_zero() or g.degree >= f.degree:
            raise InvalidParameters("g must be nonzero of degree below deg f")
        self.f = f
        self.g = g
        self.ell = f.degree
        try:
            h = invmod_lists(list(g.coeffs), list(f.coeffs), f.p) if f.degree else []
        except ZeroDivisionError:
            raise InvalidParameters("gcd(f, g) != 1") from None
        self.h = DensePoly._raw(f.field, h)

    @property
    def field(self):
        return self.f.field

    def is_radical(self):
        """True when f = Y^ell and g = 1 (the exponent-reshuffle case)."""
        return self.g.coeffs == (1,) and self.f.coeffs == (0,) * self.ell + (1,)

    def t_coeffs(self):
        """Y-coefficients of T below Y^ell, each a polynomial in X: f_j - X g_j."""
        p = self.f.p
        return [_trim([self.f[j], -self.g[j] % p]) for j in range(self.ell)]

    def __eq__(self, other):
        return isinstance(other, FiberRelation) and self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def __repr__(self):
        return f"FiberRelation(f={self.f!r}, g={self.g!r})"


class BiPoly:
    """An n x ell grid of coefficients; entry (i, j) multiplies X^i Y^j."""

    __slots__ = ("field", "n", "ell", "rows")

    def __init__(self, field, rows, ell, n=None):
        n = len(rows) if n is None else n
        p = field.p
        if len(rows) > n:
            raise InvalidParameters(f"X-degree {len(rows) - 1} not below n = {n}")
        out = []
        for row in rows:
            row = _trim([int(c) % p for c in row])
            if len(row) > ell:
                raise InvalidParameters(f"Y-degree {len(row) - 1} not below ell = {ell}")
            out.append(tuple(row))
        out += [()] * (n - len(out))
        self.field = field
        self.n = n
        self.ell = ell
        self.rows = tuple(out)

    @classmethod
    def zero(cls, field, n, ell):
        return cls(field, [], ell, n)

    @classmethod
    def constant(cls, field, c, n, ell):
        return cls(field, [[c]], ell, n)

    @classmethod
    def x(cls, field, n, ell):
        """The element x_{i-1} (n >= 2)."""
        return cls(field, [[], [1]], ell, n)

    @classmethod
    def y(cls, field, n, ell):
        """The element x_i (ell >= 2)."""
        return cls(field, [[0, 1]], ell, n)

    @classmethod
    def from_column(cls, poly, n, ell):
        """Place a polynomial in X as the Y^0 slice."""
        return cls(poly.field, [[c] for c in poly.coeffs], ell, n)

    @classmethod
    def random(cls, field, n, ell, rng=None):
        rng = rng or _random
        p = field.p
        return cls(field, [[rng.randrange(p) for _ in range(ell)] for _ in range(n)], ell, n)

    def column(self, j):
        """Coefficients of Y^j as a polynomial in X."""
        return DensePoly._raw(self.field, [r[j] if j < len(r) else 0 for r in self.rows])

    def in_subfield(self):
        """True when no Y^j with j >= 1 appears."""
        return all(len(r) <= 1 for r in self.rows)

    def grid(self):
        return [list(r) + [0] * (self.ell - len(r)) for r in self.rows]

    def is_zero(self):
        return not any(self.rows)

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.field == other.field and self.n == other.n
                and self.ell == other.ell and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.p, self.n, self.ell, self.rows))

    def _check(self, other):
        if (self.field, self.n, self.ell) != (other.field, other.n, other.ell):
            raise ValueError("bivariate shapes differ")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return BiPoly(self.field, [add_lists(a, b, p) for a, b in zip(self.rows, other.rows)],
                      self.ell, self.n)

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return BiPoly(self.field, [sub_lists(a, b, p) for a, b in zip(self.rows, other.rows)],
                      self.ell, self.n)

    def scale(self, c):
        p = self.field.p
        return BiPoly(self.field, [[x * c % p for x in r] for r in self.rows], self.ell, self.n)

    def mul_mod(self, other, t_coeffs, prev):
        """Product modulo <Q_{i-1}(X), T(X, Y)> for T monic of degree ell in Y.

        t_coeffs[j] is the coefficient of Y^j in T (a coefficient list in X);
        prev is the ModulusContext of Q_{i-1}.  Used as an independent oracle.
        """
        self._check(other)
        p, ell = self.field.p, self.ell
        a_cols = [self.column(j).coeffs for j in range(ell)]
        b_cols = [other.column(j).coeffs for j in range(ell)]
        prod = [[] for _ in range(2 * ell - 1)]
        for i, a in enumerate(a_cols):
            if not a:
                continue
            for j, b in enumerate(b_cols):
                if b:
                    prod[i + j] = add_lists(prod[i + j], _backend.mul(list(a), list(b), p), p)
        prod = [prev.reduce_list(c) for c in prod]
        for k in range(2 * ell - 2, ell - 1, -1):
            c = prod[k]
            if not c:
                continue
            # Y^k = Y^(k-ell) * (Y^ell - T)
            for j in range(ell):
                if t_coeffs[j]:
                    prod[k - ell + j] = prev.reduce_list(
                        sub_lists(prod[k - ell + j], _backend.mul(list(c), t_coeffs[j], p), p))
            prod[k] = []
        n = self.n
        grid = [[0] * ell for _ in range(n)]
        for j in range(ell):
            for i, c in enumerate(prod[j]):
                grid[i][j] = c
        return BiPoly(self.field, grid, ell, n)

    def __repr__(self):
        return f"BiPoly(n={self.n}, ell={self.ell}, rows={list(self.rows)!r})"


# composition

class _Powers:
    """Memoized powers of one polynomial (coefficient lists)."""

    def __init__(self, base, p):
        self.p = p
        self._cache = {0: [1], 1: list(base)}

    def __getitem__(self, k):
        c = self._cache
        if k not in c:
            half = self[k // 2]
            v = _backend.mul(half, half, self.p)
            if k & 1:
                v = _backend.mul(v, c[1], self.p)
            c[k] = v
        return c[k]


def _compose_rows(rows, fp, gp, lo, n, p):
    if n == 1:
        return list(rows[lo])
    m = (n + 1) // 2
    q0 = _compose_rows(rows, fp, gp, lo, m, p)
    q1 = _compose_rows(rows, fp, gp, lo + m, n - m, p)
    left = _backend.mul(q0, gp[n - m], p) if q0 else []
    right = _backend.mul(q1, fp[m], p) if q1 else []
    return add_lists(left, right, p)


def compose(P, f, g, n):
    """P[f, g, n] = sum_i p_i(Y) f^i g^(n-1-i) for P = sum_i p_i(Y) X^i."""
    rows = P.rows if isinstance(P, BiPoly) else [tuple(r) for r in P]
    if len(rows) > n:
        raise InvalidParameters(f"X-degree of P must be below n = {n}")
    rows = list(rows) + [()] * (n - len(rows))
    p = f.p
    fp = _Powers(f.coeffs, p)
    gp = _Powers(g.coeffs, p)
    return DensePoly._raw(f.field, _compose_rows(rows, fp, gp, 0, n, p))


# decomposition

class _DecomposeCache:
    """Per-call data for one relation: f^m contexts and u = 1/g^k mod f^m."""

    def __init__(self, rel):
        self.rel = rel
        self.p = rel.f.p
        self.fp = _Powers(rel.f.coeffs, self.p)
        self.gp = _Powers(rel.g.coeffs, self.p)
        self.ctx = {}
        self.u = {}
        self.g_const = rel.g.degree == 0

    def modulus(self, m):
        # reduction modulo f^m; tiny moduli use plain division
        if m not in self.ctx:
            fm = self.fp[m]
            self.ctx[m] = ModulusContext(DensePoly._raw(self.rel.field, fm)) if len(fm) > 64 else None
        return self.ctx[m]

    def divrem(self, a, m):
        ctx = self.modulus(m)
        if ctx is None:
            return _backend.divrem(a, self.fp[m], self.p)
        return ctx.divrem_list(a)

    def reduce(self, a, m):
        ctx = self.modulus(m)
        if ctx is None:
            return _backend.divrem(a, self.fp[m], self.p)[1] if len(a) >= len(self.fp[m]) else a
        return ctx.reduce_list(a)

    def inverse_g_power(self, k, m):
        """u = 1 / g^k mod f^m: powering of h mod f, then f-adic Newton lifting."""
        key = (k, m)
        if key in self.u:
            return self.u[key]
        p = self.p
        if self.g_const:
            u = [pow(self.rel.g[0], -k, p)]
            self.u[key] = u
            return u
        f = list(self.rel.f.coeffs)
        fctx = ModulusContext(self.rel.f) if len(f) > 64 else None
        h = list(self.rel.h.coeffs)
        # h^k mod f
        u = [1]
        for bit in bin(k)[2:]:
            u = _backend.mul(u, u, p)
            if bit == "1":
                u = _backend.mul(u, h, p)
            u = fctx.reduce_list(u) if fctx else _backend.divrem(u, f, p)[1]
        G = self.gp[k]
        prec = 1
        while prec < m:
            prec = min(2 * prec, m)
            Gr = self.reduce(list(G), prec)
            e = self.reduce(_backend.mul(Gr, u, p), prec)
            e = sub_lists([2], e, p)
            u = self.reduce(_backend.mul(u, e, p), prec)
        self.u[key] = u
        return u


def _decompose_rows(q, cache, n, out, lo):
    if n == 1:
        out[lo] = q
        return
    p = cache.p
    m = (n + 1) // 2
    k = n - m
    if cache.g_const:
        quo, rem = cache.divrem(q, m)
        # Q mod f^m = Q0 c^k and the quotient is Q1 unchanged
        if cache.rel.g[0] != 1:
            c = cache.inverse_g_power(k, m)[0]
            rem = [x * c % p for x in rem]
        q0, q1 = rem, quo
    else:
        u = cache.inverse_g_power(k, m)
        q0 = cache.reduce(_backend.mul(q, u, p), m)
        rest = sub_lists(q, _backend.mul(q0, cache.gp[k], p), p)
        q1, r = cache.divrem(rest, m)
        if r:
            raise CorruptStateError("inexact division in decomposition")
    _decompose_rows(q0, cache, m, out, lo)
    _decompose_rows(q1, cache, k, out, lo + m)


def decompose(Q, rel, n):
    """The BiPoly P with compose(P, f, g, n) = Q, for deg Q < ell*n."""
    ell = rel.ell
    coeffs = list(Q.coeffs) if isinstance(Q, DensePoly) else _trim(list(Q))
    if len(coeffs) > ell * n:
        raise InvalidParameters(f"degree of Q must be below ell*n = {ell * n}")
    out = [[] for _ in range(n)]
    _decompose_rows(coeffs, _DecomposeCache(rel), n, out, 0)
    return BiPoly(rel.field, out, ell, n)


def gamma_pair(rel, S, n):
    """(g^(n-1) mod S, its inverse mod S) as coefficient lists."""
    p = rel.f.p
    g = list(rel.g.coeffs)
    try:
        ginv = small_inverse(g, list(S.modulus.coeffs), p)
    except ZeroDivisionError:
        raise CorruptStateError("g is not invertible modulo the level modulus") from None
    return S.pow_list(g, n - 1), S.pow_list(ginv, n - 1)


def small_inverse(g, Q, p):
    """g^-1 mod Q for deg g much smaller than deg Q, in O(deg g * deg Q).

    With b = (Q mod g)^-1 mod g, g divides 1 - b Q and the quotient is the inverse.
    """
    g = _trim(list(g))
    if len(g) == 1:
        return [pow(g[0], -1, p)]
    b = invmod_lists(divrem_lists(Q, g, p)[1], g, p)
    num = sub_lists([1], _backend.mul(b, list(Q), p), p)
    a, r = divrem_lists(num, g, p)
    if r:
        raise CorruptStateError("inexact division computing an inverse")
    return divrem_lists(a, Q, p)[1]


def lift_fiber(A, rel, S, n, gamma_inv=None):
    """Bivariate representative to the univariate basis: A[f, g, n] / g^(n-1) mod S."""
    star = compose(A, rel.f, rel.g, n)
    if rel.g.coeffs == (1,):
        return star
    if gamma_inv is None:
        gamma_inv = gamma_pair(rel, S, n)[1]
    return DensePoly._raw(S.field, S.mul_list(list(star.coeffs), gamma_inv))


def push_fiber(A, rel, S, n, gamma=None):
    """Univariate representative to the bivariate basis: decompose(g^(n-1) A mod S)."""
    if len(A.coeffs) > S.n:
        raise InvalidParameters("element is not reduced modulo S")
    if rel.g.coeffs == (1,):
        return decompose(A, rel, n)
    if gamma is None:
        gamma = gamma_pair(rel, S, n)[0]
    star = S.mul_list(list(A.coeffs), gamma)
    return decompose(star, rel, n)


def t1_lift(A, ell, n):
    """Radical step: grid entry (e, f') goes to univariate coefficient e*ell + f'."""
    out = [0] * (ell * n)
    for e, row in enumerate(A.rows):
        out[e * ell:e * ell + len(row)] = row
    return DensePoly._raw(A.field, out)


def t1_push(A, ell, n):
    """Inverse of t1_lift."""
    c = list(A.coeffs)
    if len(c) > ell * n:
        raise InvalidParameters("element is not reduced")
    return BiPoly(A.field, [c[e * ell:(e + 1) * ell] for e in range(n)], ell, n)
