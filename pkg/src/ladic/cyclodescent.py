"""General-case towers by descent from the radical tower over K_0 = F_p(y_0).

K_0 = F_p[Z]/<P_0> with y_0 the class of Z, a non ell-th power, and
K_j = K_0[Y_j]/<Y_j^(ell^j) - y_0>.  An element of K_j is an int array of
shape (ell^j, r): entry (e, k) is the coefficient of y_j^e Z^k.  Polynomials
over K_j in X are arrays of shape (n, ell^j, r), lowest degree first.

x_i is the trace of y_i down to the index-r subfield.  Its minimal polynomial
Q_i over F_p comes out of i rounds of resultant elimination; the maps Psi_i
between K_i on the y_i basis and K_0[X]/<Q_i> carry lift and push.
"""

import random as _random
from dataclasses import dataclass

import numpy as np

from .errors import CorruptStateError, InvalidParameters, IterationCapExceeded
from .fieldcore import (
    DensePoly,
    ModulusContext,
    PrimeField,
    cyclotomic,
    factor_equal_degree,
    is_prime,
    minpoly_in_quotient,
    multiplicative_order,
)
from .fieldcore import _backend
from .fieldcore.factor import DEFAULT_ITERATION_CAP, matmul_mod
from .liftpush import BiPoly


def _ktrim(A):
    n = A.shape[0]
    while n and not A[n - 1].any():
        n -= 1
    return A[:n]


class K0Context:
    """K_0 and the arithmetic of every K_j and K_j[X] built on it."""

    def __init__(self, field, ell, r, F0, y0, P0):
        self.field = field
        self.p = field.p
        self.ell = ell
        self.r = r
        self.F0 = F0
        self.y0 = y0
        self.P0 = P0
        self.order = self.p ** r - 1  # q^r - 1
        self.ctx0 = ModulusContext(P0)
        # row k: Z^k mod P_0, for k < 2r
        red = np.zeros((2 * r, r), dtype=np.int64)
        for k in range(2 * r):
            z = self.ctx0.reduce_list([0] * k + [1])
            red[k, :len(z)] = z
        self.zred = red

    def __repr__(self):
        return f"K0Context(p={self.p}, ell={self.ell}, r={self.r}, P0={self.P0!r})"

    # elements and polynomials over K_j

    def size(self, j):
        return self.ell ** j

    def zeros(self, n, j):
        return np.zeros((n, self.size(j), self.r), dtype=np.int64)

    def one(self, j):
        a = np.zeros((self.size(j), self.r), dtype=np.int64)
        a[0, 0] = 1
        return a

    def from_k0(self, coeffs, j=0):
        a = np.zeros((self.size(j), self.r), dtype=np.int64)
        c = list(coeffs)[:self.r]
        a[0, :len(c)] = c
        return a

    def y(self, j):
        """y_j in K_j."""
        a = np.zeros((self.size(j), self.r), dtype=np.int64)
        if j == 0:
            a[0] = self.from_k0(self.ctx0.reduce_list([0, 1]))[0]
        else:
            a[1, 0] = 1
        return a

    def pmul(self, A, B):
        """Product in K_j[X] by one Kronecker-packed multiplication over F_p."""
        na, L, r = A.shape
        nb = B.shape[0]
        if na == 0 or nb == 0:
            return np.zeros((0, L, r), dtype=np.int64)
        we, wk = 2 * L - 1, 2 * r - 1
        pa = np.zeros((na, we, wk), dtype=np.int64)
        pa[:, :L, :r] = A
        pb = np.zeros((nb, we, wk), dtype=np.int64)
        pb[:, :L, :r] = B
        prod = _backend.mul(pa.ravel().tolist(), pb.ravel().tolist(), self.p)
        n = na + nb - 1
        full = np.zeros(n * we * wk, dtype=np.int64)
        full[:len(prod)] = prod[:n * we * wk]
        C = full.reshape(n, we, wk)
        # wrap y_j^L = y_0 = Z, then reduce Z-degree below r
        D = np.zeros((n, L, 2 * r), dtype=np.int64)
        D[:, :, :wk] = C[:, :L, :]
        if L > 1:
            D[:, :L - 1, 1:] += C[:, L:, :]
        D %= self.p
        out = matmul_mod(D.reshape(n * L, 2 * r), self.zred, self.p)
        return out.reshape(n, L, r)

    def mul(self, a, b):
        return self.pmul(a[None], b[None])[0]

    def padd(self, A, B):
        n = max(A.shape[0], B.shape[0])
        out = np.zeros((n,) + A.shape[1:], dtype=np.int64)
        out[:A.shape[0]] += A
        out[:B.shape[0]] += B
        return _ktrim(out % self.p)

    def psub(self, A, B):
        n = max(A.shape[0], B.shape[0])
        out = np.zeros((n,) + A.shape[1:], dtype=np.int64)
        out[:A.shape[0]] += A
        out[:B.shape[0]] -= B
        return _ktrim(out % self.p)

    def pscale(self, A, c):
        return _ktrim(self.pmul(c[None], A))

    def pow(self, a, e):
        result = np.zeros_like(a)
        result[0, 0] = 1
        for bit in bin(e)[2:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result

    def inv(self, a):
        """Inverse in K_j by Fermat: a^(q^(r ell^j) - 2)."""
        if not a.any():
            raise ZeroDivisionError("zero has no inverse in K_j")
        L = a.shape[0]
        return self.pow(a, self.p ** (self.r * L) - 2)

    def pdivmod(self, A, B, exact=False):
        """Euclidean division in K_j[X]."""
        A = _ktrim(A.copy())
        B = _ktrim(B)
        db = B.shape[0]
        if db == 0:
            raise ZeroDivisionError("division by the zero polynomial")
        lc = B[-1]
        monic = lc[0, 0] == 1 and np.count_nonzero(lc) == 1
        linv = None if monic else self.inv(lc)
        nq = A.shape[0] - db + 1
        if nq <= 0:
            if exact and A.shape[0]:
                raise CorruptStateError("inexact division in K_j[X]")
            return np.zeros((0,) + B.shape[1:], dtype=np.int64), A
        Q = np.zeros((nq,) + B.shape[1:], dtype=np.int64)
        for s in range(nq - 1, -1, -1):
            top = A[s + db - 1]
            if not top.any():
                continue
            c = top if monic else self.mul(top, linv)
            Q[s] = c
            A[s:s + db] = (A[s:s + db] - self.pmul(c[None], B)) % self.p
        R = _ktrim(A[:db - 1])
        if exact and R.shape[0]:
            raise CorruptStateError("inexact division in K_j[X]")
        return _ktrim(Q), R

    def prem(self, A, M):
        """A mod M for M monic (or with invertible leading coefficient)."""
        if A.shape[0] < M.shape[0]:
            return _ktrim(A)
        return self.pdivmod(A, M)[1]

    def pinvmod(self, a, M):
        """Inverse of a modulo M in K_j[X] (extended Euclid)."""
        r0, r1 = _ktrim(M), self.prem(a, M)
        L = M.shape[1]
        s0 = np.zeros((0, L, self.r), dtype=np.int64)
        s1 = np.zeros((1, L, self.r), dtype=np.int64)
        s1[0, 0, 0] = 1
        while r1.shape[0] > 1:
            q, r = self.pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.psub(s0, self.pmul(q, s1))
        if r1.shape[0] == 0:
            raise CorruptStateError("element is not invertible modulo the given polynomial")
        c = self.inv(r1[0])
        return self.prem(self.pscale(s1, c), M)

    def make_monic(self, A):
        lc = A[-1]
        if lc[0, 0] == 1 and np.count_nonzero(lc) == 1:
            return A
        return self.pscale(A, self.inv(lc))

    # maps between levels

    def embed_up(self, a, j):
        """K_{j-1} -> K_j: y_{j-1} = y_j^ell (works on the trailing two axes)."""
        out = np.zeros(a.shape[:-2] + (self.size(j), self.r), dtype=np.int64)
        out[..., ::self.ell, :] = a
        return out

    def phi(self, A, j):
        """phi_j on the last two axes: K_j -> K_{j-1}[Y_j]/<Y_j^ell - y_{j-1}>.

        The new leading axis indexes powers of Y_j.
        """
        ell, r = self.ell, self.r
        lead = A.shape[:-2]
        B = A.reshape(lead + (self.size(j - 1), ell, r))
        return np.moveaxis(B, -2, 0)

    def phi_inv(self, B, j):
        ell, r = self.ell, self.r
        A = np.moveaxis(B, 0, -2)
        return A.reshape(A.shape[:-3] + (self.size(j), r))

    # K_0 as F_p[Z]/<P_0>

    def k0_is_constant(self, a):
        return not a[..., 1:].any() if self.r > 1 else True


class KiElement:
    """An element of K_i on the basis y_i^0, ..., y_i^(ell^i - 1) over K_0."""

    __slots__ = ("ctx", "level", "coeffs")

    def __init__(self, ctx, level, coeffs):
        a = np.asarray(coeffs, dtype=np.int64) % ctx.p
        if a.shape != (ctx.size(level), ctx.r):
            raise InvalidParameters(f"expected shape {(ctx.size(level), ctx.r)}, got {a.shape}")
        a.setflags(write=False)
        self.ctx, self.level, self.coeffs = ctx, level, a

    @classmethod
    def random(cls, ctx, level, rng=None):
        rng = rng or _random
        shape = (ctx.size(level), ctx.r)
        return cls(ctx, level, [[rng.randrange(ctx.p) for _ in range(shape[1])] for _ in range(shape[0])])

    def _wrap(self, a):
        return KiElement(self.ctx, self.level, a)

    def __add__(self, other):
        return self._wrap(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return self._wrap(self.coeffs - other.coeffs)

    def __mul__(self, other):
        return self._wrap(self.ctx.mul(self.coeffs, other.coeffs))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** -e
        return self._wrap(self.ctx.pow(self.coeffs, e))

    def inverse(self):
        return self._wrap(self.ctx.inv(self.coeffs))

    def is_zero(self):
        return not self.coeffs.any()

    def __eq__(self, other):
        return (isinstance(other, KiElement) and self.level == other.level
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.level, self.coeffs.tobytes()))

    def __repr__(self):
        return f"KiElement(level={self.level}, coeffs={self.coeffs.tolist()!r})"


def _coeffs(v):
    return v.coeffs if isinstance(v, KiElement) else np.asarray(v, dtype=np.int64)


def nonresidue_test(alpha, ctx0, order, ell):
    """True iff alpha^((q^r - 1)/ell) != 1, i.e. alpha is not an ell-th power."""
    if alpha.is_zero():
        raise InvalidParameters("zero has no residue class")
    return ctx0.pow(alpha, order // ell).coeffs != (1,)


def general_init(p, ell, rng=None, y0=None, cap=DEFAULT_ITERATION_CAP, F0=None):
    """K_0 data: r = ord_ell(p), F_0 | Phi_ell, y_0 a non ell-th power of degree r, P_0.

    y0 and F0 may be supplied (reloading, cross-checks); they are validated.
    """
    field = p if isinstance(p, PrimeField) else PrimeField(p)
    p = field.p
    if p < 5:
        raise InvalidParameters("towers need p >= 5")
    if not is_prime(ell) or ell == 2:
        raise InvalidParameters(f"ell = {ell} must be an odd prime")
    if ell == p:
        raise InvalidParameters("ell = p is excluded")
    rng = rng or _random.Random()
    r = multiplicative_order(p % ell, ell)
    if F0 is None:
        F0 = factor_equal_degree(cyclotomic(ell, field), r, rng)
    elif F0.degree != r or not (cyclotomic(ell, field) % F0).is_zero():
        raise InvalidParameters("F0 must be a degree-r factor of Phi_ell")
    ctxF = ModulusContext(F0)
    order = p ** r - 1
    if y0 is not None:
        y0 = ctxF.reduce(y0 if isinstance(y0, DensePoly) else DensePoly(field, y0))
        if not nonresidue_test(y0, ctxF, order, ell):
            raise InvalidParameters("y0 is an ell-th power")
        P0 = minpoly_in_quotient(y0, ctxF, r)
        if P0.degree != r:
            raise InvalidParameters("y0 lies in a proper subfield of K_0")
        return K0Context(field, ell, r, F0, y0, P0)
    for _ in range(cap):
        cand = DensePoly(field, [rng.randrange(p) for _ in range(r)])
        if cand.is_zero() or not nonresidue_test(cand, ctxF, order, ell):
            continue
        P0 = minpoly_in_quotient(cand, ctxF, r)
        if P0.degree == r:
            return K0Context(field, ell, r, F0, cand, P0)
    raise IterationCapExceeded(f"no suitable y0 found in {cap} trials")


def split_exponent(E, i, ctx):
    """(E mod ell^i, (E div ell^i) mod (q^r - 1)): y_i^E = y_i^e y_0^k."""
    L = ctx.ell ** i
    return E % L, (E // L) % ctx.order


def xi_element(ctx, i):
    """x_i = sum_{j<r} y_i^(q^(ell^i j)) on the y_i basis."""
    L = ctx.ell ** i
    M = L * ctx.order
    p = ctx.p
    out = np.zeros((L, ctx.r), dtype=np.int64)
    z = [0, 1]
    for j in range(ctx.r):
        E = pow(p, L * j, M)
        e, k = split_exponent(E, i, ctx)
        c = ctx.ctx0.pow_list(z, k)
        out[e, :len(c)] += c
    return out % p


def y_power(ctx, i, E):
    """y_i^E directly, by repeated multiplication in K_i (test oracle)."""
    return ctx.pow(ctx.y(i), E)



def _subresultant(ctx, A, B):
    """Resultant in Y and the Y-degree-1 member of the subresultant PRS.

    A, B are lists of Y-coefficients, each a polynomial in X over K (array);
    deg_Y A > deg_Y B >= 1.  Collins-Brown PRS with exact divisions.
    """
    def degy(P):
        d = len(P) - 1
        while d >= 0 and P[d].shape[0] == 0:
            d -= 1
        return d

    def trim(P):
        return P[:degy(P) + 1]

    def lc(P):
        return P[degy(P)]

    def one_like(P):
        o = np.zeros((1,) + P[0].shape[1:], dtype=np.int64)
        o[0, 0, 0] = 1
        return o

    def prem(A, B):
        da, db = degy(A), degy(B)
        e = da - db + 1
        lb = lc(B)
        A = list(A)
        while degy(A) >= db:
            d = degy(A)
            la = A[d]
            shift = d - db
            A = [ctx.pmul(lb, c) for c in A]
            for k in range(db + 1):
                A[k + shift] = ctx.psub(A[k + shift], ctx.pmul(la, B[k]))
            A[d] = A[d][:0]
            A = trim(A)
            e -= 1
            if not A:
                break
        if e and A:
            f = lb
            for _ in range(e - 1):
                f = ctx.pmul(f, lb)
            A = [ctx.pmul(f, c) for c in A]
        return A

    A, B = trim(A), trim(B)
    g = h = one_like(A)
    deg1 = B if degy(B) == 1 else None
    while True:
        delta = degy(A) - degy(B)
        R = prem(A, B)
        if not R:
            raise CorruptStateError("resultant vanishes (inputs share a factor)")
        A = B
        div = ctx.pmul(g, _ppow(ctx, h, delta))
        B = [ctx.pdivmod(c, div, exact=True)[0] if c.shape[0] else c for c in R]
        g = lc(A)
        if delta == 1:
            h = g
        else:
            h = ctx.pdivmod(_ppow(ctx, g, delta), _ppow(ctx, h, delta - 1), exact=True)[0]
        d = degy(B)
        if d == 1:
            deg1 = B
        if d == 0:
            break
    da = degy(A)
    res = _ppow(ctx, B[0], da)
    if da > 1:
        res = ctx.pdivmod(res, _ppow(ctx, h, da - 1), exact=True)[0]
    return res, deg1


def _ppow(ctx, A, e):
    out = np.zeros((1,) + A.shape[1:], dtype=np.int64)
    out[0, 0, 0] = 1
    for _ in range(e):
        out = ctx.pmul(out, A)
    return out


@dataclass
class DescentData:
    """Q[j] = Q_{i,j} over K_j (arrays), S[j] = S_{i,j} over K_{j-1}; Q_i over F_p."""

    i: int
    Q: dict
    S: dict
    Qi: DensePoly

    def T(self):
        """Q_{i,i-1}, the relative polynomial over K_{i-1}."""
        return self.Q[self.i - 1]


def descend(ctx, i, x=None):
    """Q_{i,j} and S_{i,j} for j = i..1, ending with Q_i = Q_{i,0} over F_p."""
    if i < 1:
        raise InvalidParameters("descent starts at level 1")
    x = xi_element(ctx, i) if x is None else x
    Qij = np.zeros((2,) + x.shape, dtype=np.int64)
    Qij[0] = (-x) % ctx.p
    Qij[1] = ctx.one(i)
    Qs, Ss = {i: Qij}, {}
    ell = ctx.ell
    for j in range(i, 0, -1):
        star = ctx.phi(Qij, j)  # (ell, n, L_{j-1}, r): Y_j-coefficients over K_{j-1}[X]
        B = [_ktrim(star[e]) for e in range(ell)]
        A = [np.zeros((0,) + star.shape[2:], dtype=np.int64) for _ in range(ell + 1)]
        A[0] = ((-ctx.y(j - 1)) % ctx.p)[None]
        A[ell] = ctx.one(j - 1)[None]
        res, deg1 = _subresultant(ctx, A, B)
        Qnext = ctx.make_monic(res)
        expected = ell ** (i - j + 1)
        if Qnext.shape[0] - 1 != expected:
            raise CorruptStateError(f"Q_{{{i},{j - 1}}} has degree {Qnext.shape[0] - 1}, expected {expected}")
        if deg1 is None or deg1[1].shape[0] == 0:
            raise CorruptStateError("no degree-1 subresultant")
        s0, s1 = deg1[0], deg1[1]
        inv = ctx.pinvmod(s1, Qnext)
        S = ctx.prem(ctx.pmul(s0, inv), Qnext)
        S = (-S) % ctx.p
        Qs[j - 1], Ss[j] = Qnext, S
        Qij = Qnext
    Q0 = Qs[0]
    if not ctx.k0_is_constant(Q0):
        raise CorruptStateError("Q_i has coefficients outside F_p")
    Qi = DensePoly(ctx.field, Q0[:, 0, 0].tolist())
    return DescentData(i, Qs, Ss, Qi)


def psi_step_apply(ctx, data, A, j):
    """Psi_{i,j}: K_j[X]/<Q_{i,j}> -> K_{j-1}[X]/<Q_{i,j-1}> (Horner in S_{i,j})."""
    star = ctx.phi(A, j) if A.shape[0] else None
    M, S = data.Q[j - 1], data.S[j]
    shape = (0, ctx.size(j - 1), ctx.r)
    if star is None:
        return np.zeros(shape, dtype=np.int64)
    acc = np.zeros(shape, dtype=np.int64)
    for e in range(ctx.ell - 1, -1, -1):
        acc = ctx.prem(ctx.pmul(acc, S), M) if acc.shape[0] else acc
        acc = ctx.padd(acc, _ktrim(star[e]))
    return acc


def psi_step_invert(ctx, data, A, j):
    """Inverse of Psi_{i,j}: embed coefficients into K_j and reduce by Q_{i,j}."""
    A = ctx.embed_up(A, j)
    return ctx.prem(A, data.Q[j])


def psi_apply(ctx, data, v):
    """Psi_i: K_i (y_i basis) -> K_0[X]/<Q_i>; returns an (n, 1, r) array."""
    A = _ktrim(_coeffs(v)[None])
    for j in range(data.i, 0, -1):
        A = psi_step_apply(ctx, data, A, j)
    return A


def psi_invert(ctx, data, w):
    """Psi_i^-1: K_0[X]/<Q_i> -> K_i on the y_i basis (a bare array; wrap with KiElement)."""
    A = _ktrim(np.asarray(w, dtype=np.int64))
    for j in range(1, data.i + 1):
        A = psi_step_invert(ctx, data, A, j)
    out = np.zeros((ctx.size(data.i), ctx.r), dtype=np.int64)
    if A.shape[0]:
        out[:] = A[0]
    return out


def fp_to_k0poly(ctx, poly):
    """A polynomial over F_p as an (n, 1, r) array over K_0."""
    c = list(poly.coeffs) if isinstance(poly, DensePoly) else list(poly)
    A = np.zeros((len(c), 1, ctx.r), dtype=np.int64)
    A[:, 0, 0] = c
    return A


def k0poly_to_fp(ctx, A):
    """Inverse of fp_to_k0poly; raises CorruptStateError off F_p."""
    if not ctx.k0_is_constant(A):
        raise CorruptStateError("coefficients do not lie in F_p")
    return DensePoly(ctx.field, A[:, 0, 0].tolist())


def level_psi_apply(ctx, data, v):
    """Psi_i for level i >= 0 (level 0 is the identity on K_0)."""
    if data is None:
        return np.asarray(v, dtype=np.int64)[None] if np.asarray(v).any() else np.zeros((0, 1, ctx.r), dtype=np.int64)
    return psi_apply(ctx, data, v)


def level_psi_invert(ctx, data, w):
    if data is None:
        out = np.zeros((1, ctx.r), dtype=np.int64)
        if w.shape[0]:
            out[:] = w[0]
        return out
    return psi_invert(ctx, data, w)


def relative_T(ctx, data_i, data_prev):
    """T_i: Psi_{i-1} applied to the coefficients of Q_{i,i-1}; list of F_p polys in X_{i-1}."""
    T = data_i.T()
    return [k0poly_to_fp(ctx, level_psi_apply(ctx, data_prev, T[k])) for k in range(T.shape[0])]


def general_lift(A, ctx, data_i, data_prev):
    """Bivariate (x_{i-1}, x_i) representative -> univariate polynomial mod Q_i."""
    i = data_i.i
    ell = ctx.ell
    coeffs = []
    for k in range(ell):
        col = A.column(k)
        coeffs.append(level_psi_invert(ctx, data_prev, fp_to_k0poly(ctx, col)))
    # Psi_{i,i}^-1: evaluate sum_k a_k X^k at X = x_i inside K_i
    x = xi_element(ctx, i)
    acc = np.zeros((ctx.size(i), ctx.r), dtype=np.int64)
    for k in range(ell - 1, -1, -1):
        acc = (ctx.mul(acc, x) + ctx.embed_up(coeffs[k], i)) % ctx.p
    return k0poly_to_fp(ctx, psi_apply(ctx, data_i, acc))


def general_push(a, ctx, data_i, data_prev, n):
    """Univariate polynomial mod Q_i -> BiPoly on the (x_{i-1}, x_i) basis."""
    i = data_i.i
    v = psi_invert(ctx, data_i, fp_to_k0poly(ctx, a))
    B = psi_step_apply(ctx, data_i, _ktrim(v[None]), i)  # over K_{i-1}, X-degree < ell
    rows = [[0] * ctx.ell for _ in range(n)]
    for k in range(B.shape[0]):
        col = k0poly_to_fp(ctx, level_psi_apply(ctx, data_prev, B[k]))
        for e, c in enumerate(col.coeffs):
            rows[e][k] = c
    return BiPoly(ctx.field, rows, ctx.ell, n)
