"""The tower facade: strategy choice, lazily built levels, element arithmetic,
lift/push, embeddings and verification."""

import enum
import random as _random
import threading
import time
from dataclasses import dataclass, field as dc_field

from . import conic, cyclodescent, elliptic
from .errors import (
    CorruptStateError,
    InvalidParameters,
    IterationCapExceeded,
    LadicError,
    NotInSubfield,
    ZeroElementError,
)
from .fieldcore import DensePoly, ModulusContext, PrimeField, is_irreducible, is_prime
from .liftpush import (
    BiPoly,
    FiberRelation,
    compose,
    gamma_pair,
    lift_fiber,
    push_fiber,
    t1_lift,
    t1_push,
)


class Strategy(str, enum.Enum):
    T1 = "t1"
    T2 = "t2"
    ELLIPTIC = "elliptic"
    GENERAL = "general"

    @classmethod
    def parse(cls, s):
        if isinstance(s, cls):
            return s
        try:
            return cls(str(s).lower())
        except ValueError:
            raise InvalidParameters(f"unknown strategy {s!r}") from None


def check_params(p, ell):
    if not isinstance(p, int) or p < 5 or not is_prime(p):
        raise InvalidParameters(f"p = {p} must be a prime >= 5")
    if not isinstance(ell, int) or ell < 3 or not is_prime(ell):
        raise InvalidParameters(f"ell = {ell} must be an odd prime")
    if ell == p:
        raise InvalidParameters("ell = p is excluded")


def t1_nonresidue(p, ell, rng):
    """A random y0 in F_p that is not an ell-th power (ell | p - 1)."""
    e = (p - 1) // ell
    while True:
        y0 = rng.randrange(2, p)
        if pow(y0, e, p) != 1:
            return y0


@dataclass
class TowerLevel:
    index: int
    Q: DensePoly
    ctx: ModulusContext
    relation: FiberRelation = None  # T_i for the fiber strategies
    descent: object = None  # DescentData for the general strategy
    t_coeffs: list = None  # Y-coefficients of T_i (lists in x_{i-1}), for the product oracle
    _gamma: tuple = dc_field(default=None, repr=False)

    @property
    def degree(self):
        return self.Q.degree


class LevelElement:
    """A residue modulo Q_i, stored as a DensePoly of degree < ell^i."""

    __slots__ = ("tower", "level", "poly")

    def __init__(self, tower, level, poly):
        ctx = tower.level(level).ctx
        if not isinstance(poly, DensePoly):
            poly = DensePoly(tower.field, poly)
        self.tower, self.level, self.poly = tower, level, ctx.reduce(poly)

    @property
    def coeffs(self):
        return self.poly.coeffs

    def _ctx(self):
        return self.tower.level(self.level).ctx

    def _same(self, other):
        if not isinstance(other, LevelElement):
            return LevelElement(self.tower, self.level, DensePoly.constant(self.tower.field, other))
        if other.level != self.level or other.tower is not self.tower:
            raise InvalidParameters("operands live at different levels")
        return other

    def __add__(self, other):
        return LevelElement(self.tower, self.level, self.poly + self._same(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return LevelElement(self.tower, self.level, self.poly - self._same(other).poly)

    def __neg__(self):
        return LevelElement(self.tower, self.level, -self.poly)

    def __mul__(self, other):
        return LevelElement(self.tower, self.level, self._ctx().mul(self.poly, self._same(other).poly))

    __rmul__ = __mul__

    def inverse(self):
        if self.poly.is_zero():
            raise ZeroElementError("zero has no inverse")
        return LevelElement(self.tower, self.level, self._ctx().inv(self.poly))

    def __pow__(self, e):
        if e < 0 and self.poly.is_zero():
            raise ZeroElementError("zero has no inverse")
        return LevelElement(self.tower, self.level, self._ctx().pow(self.poly, e))

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        return (isinstance(other, LevelElement) and self.level == other.level
                and self.poly == other.poly)

    def __hash__(self):
        return hash((self.level, self.poly.coeffs))

    def __repr__(self):
        return f"LevelElement(level={self.level}, coeffs={list(self.poly.coeffs)!r})"


def elem_mul(a, b):
    return a * b


def elem_inv(a):
    return a.inverse()


def elem_pow(a, e):
    return a ** e


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float
    detail: str = ""


@dataclass
class VerifyReport:
    level: int
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def lines(self):
        out = []
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            extra = f"  {c.detail}" if c.detail else ""
            out.append(f"level {self.level} {c.name:<14} {tag}  {c.seconds:.4f}s{extra}")
        return out


class Tower:
    """F_p = level 0 inside level 1 inside ... with Q_i of degree ell^i."""

    def __init__(self, p, ell, strategy, init, stored=None, stored_relations=None):
        check_params(p, ell)
        self.p = p
        self.ell = ell
        self.field = PrimeField(p)
        self.strategy = Strategy.parse(strategy)
        self.init = init
        self._levels = []
        self._descent = {}
        # Q_i and (f, g) taken from a file, trusted until verified
        self._stored = dict(stored or {})
        self._stored_rel = dict(stored_relations or {})
        self._lock = threading.RLock()

    def __repr__(self):
        return f"Tower(p={self.p}, ell={self.ell}, strategy={self.strategy.value}, built={len(self._levels)})"

    # construction

    @classmethod
    def create(cls, p, ell, strategy="auto", rng=None, seed=None):
        check_params(p, ell)
        if rng is None:
            rng = _random.Random(seed)
        if strategy in (None, "auto"):
            if (p - 1) % ell == 0:
                strategy = Strategy.T1
            elif (p + 1) % ell == 0:
                strategy = Strategy.T2
            else:
                try:
                    init = elliptic.elliptic_init(p, ell, rng)
                    return cls(p, ell, Strategy.ELLIPTIC, init)
                except (InvalidParameters, IterationCapExceeded, elliptic.EllipticError):
                    strategy = Strategy.GENERAL
        strategy = Strategy.parse(strategy)
        if strategy is Strategy.T1:
            if (p - 1) % ell:
                raise InvalidParameters(f"t1 needs ell | p - 1 ({ell} does not divide {p - 1})")
            init = t1_nonresidue(p, ell, rng)
        elif strategy is Strategy.T2:
            init = conic.find_t2_generator(p, ell, rng)
        elif strategy is Strategy.ELLIPTIC:
            init = elliptic.elliptic_init(p, ell, rng)
        else:
            init = cyclodescent.general_init(p, ell, rng)
        return cls(p, ell, strategy, init)

    def _base_constant(self):
        s = self.strategy
        if s is Strategy.T1:
            return self.init
        if s is Strategy.T2:
            return self.init.alpha
        if s is Strategy.ELLIPTIC:
            return self.init.eta
        x0 = cyclodescent.xi_element(self.init, 0)
        return int(x0[0, 0])

    def relation(self, i):
        """The fiber relation of level i (None for level 0 and the general strategy)."""
        if i < 1:
            return None
        s, field = self.strategy, self.field
        if s is Strategy.T1:
            return FiberRelation(DensePoly.monomial(field, self.ell), DensePoly.constant(field, 1))
        if s is Strategy.T2:
            return conic.t2_relation(self.init)
        if s is Strategy.ELLIPTIC:
            return elliptic.backward_relation(self.init.cycle, i)
        return None

    def descent(self, i):
        """DescentData for level i of the general strategy (None at level 0)."""
        if i < 1:
            return None
        with self._lock:
            if i not in self._descent:
                self._descent[i] = cyclodescent.descend(self.init, i)
            return self._descent[i]

    def derive_Q(self, i, prev=None):
        """Q_i recomputed from the init payload (and Q_{i-1} where the strategy uses it)."""
        field, s = self.field, self.strategy
        if i == 0:
            return DensePoly(field, [-self._base_constant(), 1])
        if s is Strategy.T1:
            return DensePoly.monomial(field, self.ell ** i) - self.init
        if s is Strategy.T2:
            return conic.t2_Qi(self.init, i)
        if s is Strategy.ELLIPTIC:
            prev = prev if prev is not None else self.level(i - 1).Q
            rel = self.relation(i)
            n = prev.degree + 1
            P = BiPoly(field, [[c] for c in prev.coeffs], self.ell, n)
            return compose(P, rel.f, rel.g, n).monic()
        return self.descent(i).Qi

    def _build(self, i):
        Q = self._stored.get(i)
        if Q is None:
            Q = self.derive_Q(i, self._levels[i - 1].Q if i else None)
        if Q.degree != self.ell ** i or Q.lc != 1:
            raise CorruptStateError(f"Q_{i} must be monic of degree {self.ell ** i}")
        lvl = TowerLevel(i, Q, ModulusContext(Q))
        if i >= 1:
            rel = self.relation(i)
            lvl.relation = rel
            if rel is not None:
                lvl.t_coeffs = [list(c) for c in rel.t_coeffs()]
            else:
                lvl.descent = self.descent(i)
                T = cyclodescent.relative_T(self.init, lvl.descent, self.descent(i - 1))
                lvl.t_coeffs = [list(c.coeffs) for c in T]
        return lvl

    def level(self, i):
        if i < 0:
            raise InvalidParameters("levels start at 0")
        if i < len(self._levels):
            return self._levels[i]
        with self._lock:
            while len(self._levels) <= i:
                self._levels.append(self._build(len(self._levels)))
            return self._levels[i]

    @property
    def built_levels(self):
        return len(self._levels)

    # elements

    def element(self, i, coeffs):
        return LevelElement(self, i, coeffs)

    def one(self, i):
        return LevelElement(self, i, [1])

    def gen(self, i):
        """x_i, the class of X modulo Q_i."""
        return LevelElement(self, i, [0, 1])

    def random_element(self, i, rng=None):
        rng = rng or _random
        n = self.level(i).degree
        return LevelElement(self, i, [rng.randrange(self.p) for _ in range(n)])

    def random_bipoly(self, i, rng=None):
        return BiPoly.random(self.field, self.level(i - 1).degree, self.ell, rng)

    # lift / push

    def _gamma(self, lvl):
        if lvl._gamma is None:
            n = self.level(lvl.index - 1).degree
            lvl._gamma = tuple(gamma_pair(lvl.relation, lvl.ctx, n))
        return lvl._gamma

    def lift(self, A, i):
        """Bivariate (x_{i-1}, x_i) representative to the monomial basis of level i."""
        if i < 1:
            raise InvalidParameters("lift starts at level 1")
        lvl = self.level(i)
        n = self.level(i - 1).degree
        if A.n != n or A.ell != self.ell:
            raise InvalidParameters(f"expected an {n} x {self.ell} bivariate element")
        s = self.strategy
        if s is Strategy.T1:
            out = t1_lift(A, self.ell, n)
        elif s is Strategy.GENERAL:
            out = cyclodescent.general_lift(A, self.init, lvl.descent, self.descent(i - 1))
        elif lvl.relation.g.coeffs == (1,):
            out = lift_fiber(A, lvl.relation, lvl.ctx, n)
        else:
            out = lift_fiber(A, lvl.relation, lvl.ctx, n, gamma_inv=self._gamma(lvl)[1])
        return LevelElement(self, i, out)

    def push(self, a):
        """Inverse of lift."""
        i = a.level
        if i < 1:
            raise InvalidParameters("push starts at level 1")
        lvl = self.level(i)
        n = self.level(i - 1).degree
        s = self.strategy
        if s is Strategy.T1:
            return t1_push(a.poly, self.ell, n)
        if s is Strategy.GENERAL:
            return cyclodescent.general_push(a.poly, self.init, lvl.descent, self.descent(i - 1), n)
        if lvl.relation.g.coeffs == (1,):
            return push_fiber(a.poly, lvl.relation, lvl.ctx, n)
        return push_fiber(a.poly, lvl.relation, lvl.ctx, n, gamma=self._gamma(lvl)[0])

    def bi_mul(self, A, B, i):
        """Product of bivariate representatives modulo <Q_{i-1}, T_i> (independent oracle)."""
        lvl = self.level(i)
        return A.mul_mod(B, lvl.t_coeffs, self.level(i - 1).ctx)

    # embeddings

    def embed(self, a, target):
        if target < a.level:
            raise InvalidParameters("embed goes upward; use project")
        for k in range(a.level + 1, target + 1):
            n = self.level(k - 1).degree
            a = self.lift(BiPoly.from_column(a.poly, n, self.ell), k)
        return a

    def project(self, a, target):
        if target > a.level:
            raise InvalidParameters("project goes downward; use embed")
        for k in range(a.level, target, -1):
            B = self.push(a)
            if not B.in_subfield():
                raise NotInSubfield(f"element of level {a.level} does not lie in level {target}")
            a = LevelElement(self, k - 1, B.column(0))
        return a

    # verification

    def verify_level(self, i, samples=20, rng=None):
        rng = rng or _random.Random(0)
        checks = []

        def run(name, fn):
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except LadicError as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            checks.append(CheckResult(name, bool(ok), time.perf_counter() - t, detail))
            return ok

        try:
            lvl = self.level(i)
        except LadicError as exc:
            checks.append(CheckResult("build", False, 0.0, f"{type(exc).__name__}: {exc}"))
            return VerifyReport(i, checks)
        Q = lvl.Q
        run("degree", lambda: (Q.degree == self.ell ** i and Q.lc == 1, f"deg {Q.degree}"))
        def consistency():
            if self.derive_Q(i) != Q:
                return False, "Q_i differs from the one derived from init"
            rel = self.relation(i)
            if i in self._stored_rel and (rel is None or (rel.f, rel.g) != self._stored_rel[i]):
                return False, "stored relation differs from the derived one"
            return True, ""

        run("consistency", consistency)
        if i == 0:
            return VerifyReport(i, checks)
        run("irreducible", lambda: (is_irreducible(Q), ""))

        def relation():
            prev = self.level(i - 1).Q
            x = self.lift(BiPoly.x(self.field, prev.degree, self.ell), i) if prev.degree > 1 \
                else self.embed(self.gen(i - 1), i)
            return lvl.ctx.reduce(_compose_into(prev, x.poly, lvl.ctx)).is_zero(), ""

        run("relation", relation)
        pairs = [(self.random_bipoly(i, rng), self.random_bipoly(i, rng)) for _ in range(samples)]

        def roundtrip():
            bad = sum(self.push(self.lift(A, i)) != A for A, _ in pairs)
            return bad == 0, f"{samples - bad}/{samples}"

        def homomorphism():
            bad = sum(self.lift(self.bi_mul(A, B, i), i) != self.lift(A, i) * self.lift(B, i)
                      for A, B in pairs)
            return bad == 0, f"{samples - bad}/{samples}"

        run("roundtrip", roundtrip)
        run("homomorphism", homomorphism)
        return VerifyReport(i, checks)


def _compose_into(P, a, ctx):
    """P(a) mod the context modulus, by Horner."""
    acc = DensePoly(ctx.field, [])
    for c in reversed(P.coeffs):
        acc = ctx.mul(acc, a) + c
    return acc


def create(p, ell, strategy="auto", rng=None, seed=None):
    return Tower.create(p, ell, strategy, rng=rng, seed=seed)
