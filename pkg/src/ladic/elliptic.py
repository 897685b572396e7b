"""Elliptic-curve isogeny cycles and the data of the elliptic tower.

Curves are short Weierstrass y^2 = x^3 + a x + b over F_p, p >= 5.  The
tower walks backwards along a cycle of rational ell-isogenies
E_0 -> E_1 -> ... -> E_n ~ E_0 computed once with Velu's formulas.
"""

import math
import random as _random
from dataclasses import dataclass, field as _dc_field

from .errors import InvalidParameters, IterationCapExceeded, LadicError
from .fieldcore import DensePoly, PrimeField, is_prime, legendre, sqrt_mod
from .fieldcore.factor import DEFAULT_ITERATION_CAP
from .fieldcore.poly import invmod_lists
from .liftpush import FiberRelation

EXHAUSTIVE_COUNT_LIMIT = 10 ** 4


class EllipticError(LadicError):
    pass


@dataclass(frozen=True)
class Curve:
    field: PrimeField
    a: int
    b: int

    def __post_init__(self):
        p = self.field.p
        if p < 5:
            raise InvalidParameters("short Weierstrass curves need p >= 5")
        object.__setattr__(self, "a", self.a % p)
        object.__setattr__(self, "b", self.b % p)
        if (4 * self.a ** 3 + 27 * self.b ** 2) % p == 0:
            raise InvalidParameters("singular curve (4a^3 + 27b^2 = 0)")

    @property
    def p(self):
        return self.field.p

    def j_invariant(self):
        p = self.p
        a3 = 4 * pow(self.a, 3, p)
        return 1728 * a3 * pow(a3 + 27 * self.b * self.b, -1, p) % p

    def rhs(self, x):
        return (x * x * x + self.a * x + self.b) % self.p

    def contains(self, P):
        if P.is_infinity():
            return True
        return (P.y * P.y - self.rhs(P.x)) % self.p == 0

    def random_point(self, rng=None):
        """A uniformly random affine point (rejection on x)."""
        rng = rng or _random
        p = self.p
        while True:
            x = rng.randrange(p)
            y = sqrt_mod(self.rhs(x), p)
            if y is not None:
                if y and rng.random() < 0.5:
                    y = p - y
                return ECPoint(x, y)


@dataclass(frozen=True)
class ECPoint:
    x: int = None
    y: int = None

    def is_infinity(self):
        return self.x is None


INFINITY = ECPoint()


def ec_neg(P, E):
    return P if P.is_infinity() else ECPoint(P.x, -P.y % E.p)


def ec_add(P, Q, E):
    """Chord-tangent addition."""
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    p = E.p
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return INFINITY
        lam = (3 * P.x * P.x + E.a) * pow(2 * P.y, -1, p) % p
    else:
        lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    x = (lam * lam - P.x - Q.x) % p
    return ECPoint(x, (lam * (P.x - x) - P.y) % p)


def ec_mul(n, P, E):
    """[n]P by double-and-add."""
    if n < 0:
        n, P = -n, ec_neg(P, E)
    R = INFINITY
    for bit in bin(n)[2:]:
        R = ec_add(R, R, E)
        if bit == "1":
            R = ec_add(R, P, E)
    return R


def _count_exhaustive(E):
    p = E.p
    return p + 1 + sum(legendre(E.rhs(x), p) for x in range(p))


def _annihilators(P, E, lo, hi):
    """All m in [lo, hi] with [m]P = infinity (baby-step giant-step)."""
    s = math.isqrt(hi - lo) + 1
    baby = {}
    R = INFINITY
    for i in range(s):
        baby.setdefault(R, []).append(i)
        R = ec_add(R, P, E)
    step = ec_mul(s, P, E)
    out = []
    R = ec_mul(lo, P, E)  # [lo + j s]P
    j = 0
    while lo + j * s <= hi:
        for i in baby.get(ec_neg(R, E), ()):
            m = lo + j * s + i
            if m <= hi:
                out.append(m)
        R = ec_add(R, step, E)
        j += 1
    return out


def point_count(E, rng=None, samples=8):
    """#E(F_p) including infinity.

    Exhaustive below EXHAUSTIVE_COUNT_LIMIT; above, baby-step giant-step over
    the Hasse interval, intersecting the candidate orders of random points.
    """
    p = E.p
    if p <= EXHAUSTIVE_COUNT_LIMIT:
        return _count_exhaustive(E)
    rng = rng or _random.Random(p)
    r = math.isqrt(4 * p) + 1
    lo, hi = p + 1 - r, p + 1 + r
    cands = None
    for _ in range(samples):
        found = set(_annihilators(E.random_point(rng), E, lo, hi))
        cands = found if cands is None else cands & found
        if len(cands) == 1:
            return cands.pop()
    return _count_exhaustive(E)


def hasse_allows(p, ell):
    """ell <= p + 2 sqrt(p) + 1, i.e. some curve over F_p may have ell | #E."""
    return ell <= p + 1 or (ell - p - 1) ** 2 <= 4 * p


def _check_elliptic(p, ell):
    if p < 5:
        raise InvalidParameters("the elliptic construction needs p >= 5")
    if not is_prime(ell) or ell == 2:
        raise InvalidParameters(f"ell = {ell} must be an odd prime")
    if ell == p:
        raise InvalidParameters("ell = p is excluded")
    if (p - 1) % ell == 0:
        raise InvalidParameters(f"the elliptic construction needs ell not dividing p - 1 ({ell} | {p - 1})")
    if not hasse_allows(p, ell):
        raise InvalidParameters(f"ell = {ell} exceeds the Hasse bound p + 2 sqrt(p) + 1")


def find_curve(p, ell, rng=None, cap=None):
    """A curve with ell | #E and j not in {0, 1728}."""
    field = p if isinstance(p, PrimeField) else PrimeField(p)
    p = field.p
    _check_elliptic(p, ell)
    rng = rng or _random.Random()
    cap = cap or max(1000, 50 * ell)
    for _ in range(cap):
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        if (4 * a ** 3 + 27 * b ** 2) % p == 0:
            continue
        E = Curve(field, a, b)
        if E.j_invariant() in (0, 1728 % p):
            continue
        if point_count(E, rng) % ell == 0:
            return E
    raise IterationCapExceeded(f"no curve over F_{p} with {ell} | #E found in {cap} trials")


def valuation(n, ell):
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def torsion_point(E, ell, e, N, rng=None, cap=DEFAULT_ITERATION_CAP):
    """A point of order exactly ell^e, as [N/ell^e]R for random R."""
    rng = rng or _random.Random()
    cof = N // ell ** e
    for _ in range(cap):
        P = ec_mul(cof, E.random_point(rng), E)
        if not ec_mul(ell ** (e - 1), P, E).is_infinity():
            return P
    raise IterationCapExceeded("no point of full ell-power order found")


def torsion_abscissa(E, ell, e, N, rng=None):
    """Abscissa of a point of order exactly ell^e."""
    return torsion_point(E, ell, e, N, rng).x


def kernel_poly(E, ell, N, rng=None, cap=DEFAULT_ITERATION_CAP):
    """prod_{k=1}^{(ell-1)/2} (X - x([k]T)) for T of order ell."""
    rng = rng or _random.Random()
    if N % ell:
        raise InvalidParameters(f"{ell} does not divide #E = {N}")
    for _ in range(cap):
        T = ec_mul(N // ell, E.random_point(rng), E)
        if not T.is_infinity():
            break
    else:
        raise IterationCapExceeded("no rational point of order ell found")
    field = E.field
    h = DensePoly.constant(field, 1)
    Q = T
    for _ in range((ell - 1) // 2):
        h = h * DensePoly(field, [-Q.x, 1])
        Q = ec_add(Q, T, E)
    return h


def division_polynomial(E, n):
    """f_n with psi_n = f_n (n odd) or psi_n = 2y f_n (n even), as a polynomial in x."""
    field, a, b = E.field, E.a, E.b
    F = DensePoly(field, [4 * b, 4 * a, 0, 4])  # (2y)^2
    F2 = F * F
    memo = {
        0: DensePoly(field, []),
        1: DensePoly(field, [1]),
        2: DensePoly(field, [1]),
        3: DensePoly(field, [-a * a, 12 * b, 6 * a, 0, 3]),
        4: DensePoly(field, [-8 * b * b - a ** 3, -4 * a * b, -5 * a * a, 20 * b, 5 * a, 0, 1]).scale(2),
    }

    def f(k):
        if k in memo:
            return memo[k]
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                r = F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
            else:
                r = f(m + 2) * f(m) ** 3 - F2 * f(m - 1) * f(m + 1) ** 3
        else:
            r = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
        memo[k] = r
        return r

    return f(n)


@dataclass(frozen=True)
class IsogenyStep:
    """phi: (x, y) -> (f/g, y_scale * y * (f/g)')."""

    domain: Curve
    codomain: Curve
    f: DensePoly
    g: DensePoly
    h: DensePoly
    y_scale: int = 1

    def relation(self):
        return FiberRelation(self.f, self.g)

    def apply(self, P):
        """Image of a point; kernel points (roots of g) map to infinity."""
        if P.is_infinity():
            return INFINITY
        p = self.domain.p
        gx = int(self.g(P.x))
        if gx == 0:
            return INFINITY
        fx = int(self.f(P.x))
        ginv = pow(gx, -1, p)
        X = fx * ginv % p
        # (f/g)' = (f' g - f g') / g^2
        df = (int(self.f.derivative()(P.x)) * gx - fx * int(self.g.derivative()(P.x))) % p
        Y = self.y_scale * P.y * df * ginv * ginv % p
        return ECPoint(X, Y)


def velu(E, h, ell):
    """Velu isogeny with kernel polynomial h, from sums over the roots of h.

    With v(t) = 6t^2 + 2a and u(t) = 4(t^3 + a t + b), R_v = v h' mod h and
    R_u = u h' mod h give X = x + R_v/h - (R_u/h)', i.e. f/g with g = h^2 and
    f = x h^2 + R_v h - (R_u' h - R_u h').  Sums over roots are read off as
    leading coefficients of c h' mod h.
    """
    field, a, b = E.field, E.a, E.b
    p = field.p
    d = (ell - 1) // 2
    if h.degree != d or h.lc != 1:
        raise InvalidParameters(f"kernel polynomial must be monic of degree {d}")
    hp = h.derivative()
    v_t = DensePoly(field, [2 * a, 0, 6])
    u_t = DensePoly(field, [4 * b, 4 * a, 0, 4])
    Rv = (v_t * hp) % h
    Ru = (u_t * hp) % h

    def root_sum(c):
        r = (c * hp) % h
        return r[d - 1]

    v = root_sum(v_t)
    w = root_sum(u_t + DensePoly.x(field) * v_t)
    A, B = (a - 5 * v) % p, (b - 7 * w) % p
    try:
        codomain = Curve(field, A, B)
    except InvalidParameters:
        raise EllipticError("Velu codomain is singular (malformed kernel polynomial)") from None
    g = h * h
    f = DensePoly.x(field) * g + Rv * h - (Ru.derivative() * h - Ru * hp)
    if f.degree != ell or f.lc != 1:
        raise EllipticError("Velu numerator has the wrong shape (malformed kernel polynomial)")
    try:
        invmod_lists(list(g.coeffs), list(f.coeffs), p)
    except ZeroDivisionError:
        raise EllipticError("gcd(f, g) != 1") from None
    return IsogenyStep(E, codomain, f, g, h)


@dataclass
class IsogenyCycle:
    steps: list
    ell: int
    order: int
    twist_scalar: int = 1  # u with a_n u^4 = a_0, b_n u^6 = b_0
    flags: list = _dc_field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    @property
    def start(self):
        return self.steps[0].domain


def _closing_scalar(En, E0):
    """lambda = u^2 with a_n u^4 = a_0 and b_n u^6 = b_0, or None."""
    p = E0.p
    lam = E0.b * En.a * pow(En.b * E0.a, -1, p) % p
    if lam * lam % p != E0.a * pow(En.a, -1, p) % p:
        return None
    return lam


def build_cycle(E0, ell, N=None, rng=None, cap=None):
    """Walk E_0 -> E_1 -> ... with Velu until a curve F_p-isomorphic to E_0 appears.

    The closing isomorphism (x, y) -> (u^2 x, u^3 y) is folded into the last
    step: its g is divided by u^2 and its y_scale set to u.
    """
    p = E0.p
    N = N if N is not None else point_count(E0)
    rng = rng or _random.Random(0)
    cap = cap or 4 * (math.isqrt(p - 1) + 1) * max(1, (p - 1).bit_length())
    j0 = E0.j_invariant()
    steps, flags, seen = [], [], {j0}
    E = E0
    for _ in range(cap):
        step = velu(E, kernel_poly(E, ell, N, rng), ell)
        steps.append(step)
        E = step.codomain
        j = E.j_invariant()
        if j == j0:
            lam = _closing_scalar(E, E0)
            if lam is not None and legendre(lam, p) == 1:
                u = sqrt_mod(lam, p)
                last = steps[-1]
                g = last.g.scale(pow(lam, -1, p))
                steps[-1] = IsogenyStep(last.domain, E0, last.f, g, last.h, u)
                return IsogenyCycle(steps, ell, N, u, flags)
            flags.append(f"step {len(steps)}: j(E_0) repeats on a non-isomorphic twist; walking on")
        elif j in seen:
            flags.append(f"step {len(steps)}: j = {j} repeats before closure")
        seen.add(j)
    raise IterationCapExceeded(f"isogeny cycle did not close within {cap} steps")


def backward_relation(cycle, i):
    """(f_{-i}, g_{-i}): step -i of the cycle, index taken modulo its length."""
    return cycle.steps[(-i) % len(cycle)].relation()


@dataclass
class EllipticInit:
    cycle: IsogenyCycle
    eta: int
    e: int
    N: int
    point: ECPoint

    @property
    def curve(self):
        return self.cycle.start

    @property
    def ell(self):
        return self.cycle.ell


def elliptic_init(p, ell, rng=None, curve=None):
    """Curve, closed cycle and eta for the elliptic tower."""
    field = p if isinstance(p, PrimeField) else PrimeField(p)
    _check_elliptic(field.p, ell)
    rng = rng or _random.Random()
    E0 = curve or find_curve(field, ell, rng)
    N = point_count(E0, rng)
    e = valuation(N, ell)
    if e == 0:
        raise InvalidParameters(f"{ell} does not divide #E = {N}")
    cycle = build_cycle(E0, ell, N, rng)
    P = torsion_point(E0, ell, e, N, rng)
    return EllipticInit(cycle, P.x, e, N, P)


def elliptic_Qi(init, i, prev=None):
    """Q_i over the elliptic tower; prev is Q_{i-1} when already known."""
    from .liftpush import BiPoly, compose

    field = init.curve.field
    if i == 0:
        return DensePoly(field, [-init.eta, 1])
    prev = prev if prev is not None else elliptic_Qi(init, i - 1)
    rel = backward_relation(init.cycle, i)
    n = prev.degree + 1
    P = BiPoly(field, [[c] for c in prev.coeffs], rel.ell, n)
    return compose(P, rel.f, rel.g, n).monic()
