"""Pell conic x^2 - D y^2 = 4, its x-only ladder, and the T2 tower data.

The conic with D a non-residue is a model of the torus T2 (order p + 1).
P_n is the abscissa of [n]P as a polynomial in x(P):
P_0 = 2, P_1 = X, P_{n+1} = X P_n - P_{n-1}.
"""

import random as _random
from dataclasses import dataclass

from .errors import InvalidParameters, IterationCapExceeded
from .fieldcore import DensePoly, FieldElement, PrimeField, is_prime, sqrt_mod
from .fieldcore.factor import DEFAULT_ITERATION_CAP
from .liftpush import FiberRelation


@dataclass(frozen=True)
class ConicParams:
    field: PrimeField
    delta: int

    def __post_init__(self):
        p = self.field.p
        d = self.delta % p
        object.__setattr__(self, "delta", d)
        if d == 0 or pow(d, (p - 1) // 2, p) == 1:
            raise InvalidParameters(f"D = {d} must be a quadratic non-residue mod {p}")

    def contains(self, P):
        p = self.field.p
        return (P.x * P.x - self.delta * P.y * P.y - 4) % p == 0

    def neutral(self):
        return ConicPoint(2, 0)

    def point_from_x(self, x):
        """A point with abscissa x, or None if (x^2 - 4)/D is not a square."""
        p = self.field.p
        t = (x * x - 4) * pow(self.delta, -1, p) % p
        y = sqrt_mod(t, p)
        return None if y is None else ConicPoint(x % p, y)

    def random_point(self, rng=None):
        rng = rng or _random
        while True:
            P = self.point_from_x(rng.randrange(self.field.p))
            if P is not None:
                return P if rng.random() < 0.5 else ConicPoint(P.x, -P.y % self.field.p)


@dataclass(frozen=True)
class ConicPoint:
    x: int
    y: int


def conic_add(P, Q, params):
    """((x1 x2 + D y1 y2)/2, (x1 y2 + x2 y1)/2)."""
    p = params.field.p
    half = (p + 1) // 2
    x = (P.x * Q.x + params.delta * P.y * Q.y) * half % p
    y = (P.x * Q.y + Q.x * P.y) * half % p
    return ConicPoint(x, y)


def conic_neg(P, params):
    return ConicPoint(P.x, -P.y % params.field.p)


def conic_mul(n, P, params):
    """[n]P by double-and-add (full coordinates)."""
    if n < 0:
        n, P = -n, conic_neg(P, params)
    R = params.neutral()
    for bit in bin(n)[2:]:
        R = conic_add(R, R, params)
        if bit == "1":
            R = conic_add(R, P, params)
    return R


def _val(a):
    return a.value if isinstance(a, FieldElement) else a


def double_x(alpha, p=None):
    """Abscissa of [2]P: alpha^2 - 2."""
    if isinstance(alpha, FieldElement):
        return alpha * alpha - 2
    return (alpha * alpha - 2) % p


def diffadd_x(alpha, alpha2, gamma, p=None):
    """Abscissa of P + P' from those of P, P' and P - P': alpha alpha' - gamma."""
    if isinstance(alpha, FieldElement):
        return alpha * alpha2 - gamma
    return (alpha * alpha2 - gamma) % p


def ladder_x(n, alpha, p=None):
    """Abscissa of [n]P from alpha = x(P) by the Montgomery ladder."""
    field = alpha.field if isinstance(alpha, FieldElement) else None
    if field is not None:
        p = field.p
    x = _val(alpha) % p
    n = abs(n)
    a, b = 2, x
    for bit in bin(n)[2:] if n else "":
        if bit == "1":
            a, b = (a * b - x) % p, (b * b - 2) % p
        else:
            a, b = (a * a - 2) % p, (a * b - x) % p
    return FieldElement(field, a) if field is not None else a


def _unit_split(m, p):
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return m, v


def pell_poly(n, field):
    """P_n in O(n) operations from the coefficient ratios.

    c_{n,0} = 1 and c_{n,2k+2}/c_{n,2k} = -(n-2k)(n-2k-1)/((n-k-1)(k+1)).
    Each coefficient is an integer; it is tracked as unit * p^v so that
    factors of p in numerators and denominators cancel exactly.
    """
    if isinstance(field, int):
        field = PrimeField(field)
    p = field.p
    if n < 0:
        raise InvalidParameters("n must be nonnegative")
    if n == 0:
        return DensePoly._raw(field, [2 % p])
    out = [0] * (n + 1)
    unit, v = 1, 0
    out[n] = 1
    k = 0
    while 2 * k + 2 <= n:
        num = (n - 2 * k) * (n - 2 * k - 1)
        den = (n - k - 1) * (k + 1)
        nu, nv = _unit_split(num, p)
        du, dv = _unit_split(den, p)
        unit = -unit * nu * pow(du, -1, p) % p
        v += nv - dv
        out[n - 2 * k - 2] = unit if v == 0 else 0
        k += 1
    return DensePoly._raw(field, out)


def pell_poly_recurrence(n, field):
    """P_n from u_{n+1} = X u_n - u_{n-1}, P_0 = 2, P_1 = X (quadratic time)."""
    if isinstance(field, int):
        field = PrimeField(field)
    if n == 0:
        return DensePoly.constant(field, 2)
    p = field.p
    prev, cur = [2 % p], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] = (nxt[i] - c) % p
        prev, cur = cur, nxt
    return DensePoly._raw(field, cur)


def r_poly(n, field):
    """R_n: same recurrence with R_0 = 0, R_1 = 1 (ordinate factor of [n]P)."""
    if isinstance(field, int):
        field = PrimeField(field)
    if n == 0:
        return DensePoly._raw(field, [])
    p = field.p
    prev, cur = [], [1]
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] = (nxt[i] - c) % p
        prev, cur = cur, nxt
    return DensePoly._raw(field, cur)


@dataclass(frozen=True)
class T2Init:
    params: ConicParams
    alpha: int
    ell: int

    @property
    def field(self):
        return self.params.field

    def generator(self):
        """The point (alpha, 1) on x^2 - (alpha^2 - 4) y^2 = 4."""
        return ConicPoint(self.alpha, 1)


def _check_t2(p, ell):
    if not is_prime(ell) or ell == 2:
        raise InvalidParameters(f"ell = {ell} must be an odd prime")
    if ell == p:
        raise InvalidParameters("ell = p is excluded")
    if (p + 1) % ell:
        raise InvalidParameters(f"T2 needs ell | p + 1 ({ell} does not divide {p + 1})")


def is_t2_generator(alpha, p, ell):
    d = (alpha * alpha - 4) % p
    if d == 0 or pow(d, (p - 1) // 2, p) == 1:
        return False
    return ladder_x((p + 1) // ell, alpha, p) != 2


def find_t2_generator(p, ell, rng=None, cap=DEFAULT_ITERATION_CAP):
    """alpha with alpha^2 - 4 a non-residue and [(p+1)/ell](alpha, 1) not neutral."""
    field = p if isinstance(p, PrimeField) else PrimeField(p)
    p = field.p
    _check_t2(p, ell)
    rng = rng or _random.Random()
    for _ in range(cap):
        alpha = rng.randrange(p)
        if is_t2_generator(alpha, p, ell):
            return T2Init(ConicParams(field, alpha * alpha - 4), alpha, ell)
    raise IterationCapExceeded(f"no T2 generator found in {cap} trials")


def t2_Qi(init, i):
    """P_{ell^i} - alpha (X - alpha at level 0)."""
    field = init.field
    Q = pell_poly(init.ell ** i, field)
    return Q - init.alpha


def t2_relation(init):
    """f = P_ell, g = 1, the same at every level."""
    field = init.field
    return FiberRelation(pell_poly(init.ell, field), DensePoly.constant(field, 1))
