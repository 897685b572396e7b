"""Dense univariate polynomials over a prime field."""

from . import _backend
from .field import FieldElement, PrimeField

# divisors at least this long (with a long enough quotient) use Newton division
NEWTON_DIVISION_CUTOFF = 64


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _scalar(field, c):
    if isinstance(c, FieldElement):
        return c.value
    return int(c) % field.p


class DensePoly:
    """Immutable polynomial; ``coeffs`` is a tuple of canonical ints, lowest degree first.

    The zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        if isinstance(field, int):
            field = PrimeField(field)
        p = field.p
        self.field = field
        self.coeffs = tuple(_trim([_scalar(field, c) for c in coeffs]))

    @classmethod
    def _raw(cls, field, coeffs):
        # trusted canonical coefficients; only trailing zeros are stripped
        obj = cls.__new__(cls)
        obj.field = field
        c = list(coeffs)
        obj.coeffs = tuple(_trim(c))
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, (_scalar(field, c),))

    @classmethod
    def monomial(cls, field, k, c=1):
        return cls._raw(field, [0] * k + [_scalar(field, c)])

    @property
    def p(self):
        return self.field.p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self.coeffs == DensePoly.constant(self.field, other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def _other(self, other):
        if isinstance(other, DensePoly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return DensePoly.constant(self.field, other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, add_lists(self.coeffs, o.coeffs, self.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, sub_lists(self.coeffs, o.coeffs, self.p))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.p
        return DensePoly._raw(self.field, [-c % p for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return poly_mul(self, o)

    __rmul__ = __mul__

    def scale(self, c):
        c = _scalar(self.field, c)
        p = self.p
        return DensePoly._raw(self.field, [x * c % p for x in self.coeffs])

    def __divmod__(self, other):
        return poly_divrem(self, self._other(other))

    def __floordiv__(self, other):
        return poly_divrem(self, self._other(other))[0]

    def __mod__(self, other):
        return poly_divrem(self, self._other(other))[1]

    def __pow__(self, e):
        result = DensePoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        """Evaluate at a field element or int (Horner); returns a FieldElement."""
        p = self.p
        v = _scalar(self.field, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * v + c) % p
        return FieldElement(self.field, acc)

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self):
        p = self.p
        return DensePoly._raw(self.field, [i * c % p for i, c in enumerate(self.coeffs)][1:])

    def shift(self, k):
        """Multiply by X^k."""
        if not self.coeffs:
            return self
        return DensePoly._raw(self.field, (0,) * k + self.coeffs)

    def truncate(self, n):
        """Remainder modulo X^n."""
        return DensePoly._raw(self.field, self.coeffs[:n])

    def reverse(self, n):
        """X^(n-1) * self(1/X) for a polynomial of length at most n."""
        c = list(self.coeffs) + [0] * (n - len(self.coeffs))
        return DensePoly._raw(self.field, c[::-1])

    def __repr__(self):
        if not self.coeffs:
            return f"DensePoly(F_{self.p}, 0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return f"DensePoly(F_{self.p}, {' + '.join(terms)})"


def add_lists(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def sub_lists(a, b, p):
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def mul_lists(a, b, p):
    return _backend.mul(a, b, p)


def poly_mul(a, b):
    """Product of two polynomials over the same field."""
    if a.field != b.field:
        raise ValueError("polynomials over different fields")
    return DensePoly._raw(a.field, _backend.mul(a.coeffs, b.coeffs, a.p))


def divrem_lists(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], _trim(list(a))
    if len(b) >= NEWTON_DIVISION_CUTOFF and len(a) - len(b) >= NEWTON_DIVISION_CUTOFF:
        from .modulus import ModulusContext

        lc = b[-1]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            b = [c * inv % p for c in b]
        ctx = ModulusContext(DensePoly._raw(PrimeField(p), b))
        q, r = ctx.divrem_list(list(a))
        if lc != 1:
            q = [c * inv % p for c in q]
        return q, r
    return _backend.divrem(list(a), list(b), p)


def poly_divrem(a, b):
    """Return (q, r) with a = q*b + r and deg r < deg b."""
    if b is None or b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q, r = divrem_lists(a.coeffs, b.coeffs, a.p)
    return DensePoly._raw(a.field, q), DensePoly._raw(a.field, r)


def poly_xgcd(a, b):
    """Return (g, u, v) with u*a + v*b = g, g the monic gcd."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    g, u, v = _backend.xgcd(a.coeffs, b.coeffs, a.p)
    f = a.field
    return DensePoly._raw(f, g), DensePoly._raw(f, u), DensePoly._raw(f, v)


def poly_gcd(a, b):
    return poly_xgcd(a, b)[0]


def invmod_lists(a, m, p):
    """Inverse of a modulo m (lists); raises ZeroDivisionError if not coprime."""
    g, u, _ = _backend.xgcd(list(a), list(m), p)
    if g != [1]:
        raise ZeroDivisionError("polynomial is not invertible modulo the given modulus")
    if len(u) >= len(m):
        u = divrem_lists(u, m, p)[1]
    return u
