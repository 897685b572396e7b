"""Quotient rings F_p[X]/<Q> with Newton-reciprocal remainder."""

from . import _backend
from .poly import DensePoly, _trim, invmod_lists, sub_lists
from ..errors import InvalidParameters, ZeroElementError


def series_inverse(f, n, p):
    """Inverse of the power series f (f[0] != 0) modulo X^n, by Newton iteration."""
    g = [pow(f[0], p - 2, p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # g <- g * (2 - f*g) mod X^k
        e = _backend.mul(f[:k], g, p)[:k]
        e = [-c % p for c in e]
        e[0] = (e[0] + 2) % p if e else 2
        g = _backend.mul(g, e, p)[:k]
    return _trim(g[:n])


class ModulusContext:
    """Arithmetic modulo a monic polynomial Q of degree n >= 1.

    The reciprocal of rev(Q) is kept to precision n, which is exactly what a
    product of two reduced elements needs; longer inputs are reduced in
    chunks of n coefficients.
    """

    __slots__ = ("modulus", "field", "p", "n", "_q", "_recip", "_frob")

    def __init__(self, modulus):
        if modulus.degree < 1:
            raise InvalidParameters("modulus must have degree at least 1")
        if modulus.lc != 1:
            raise InvalidParameters("modulus must be monic")
        self.modulus = modulus
        self.field = modulus.field
        self.p = modulus.p
        self.n = modulus.degree
        self._q = list(modulus.coeffs)
        self._recip = None
        self._frob = None

    def reciprocal(self):
        """rev(Q)^-1 mod X^n, computed once."""
        if self._recip is None:
            self._recip = series_inverse(self._q[::-1], self.n, self.p)
        return self._recip

    def _divrem_short(self, a):
        # len(a) <= 2n
        n, p = self.n, self.p
        if len(a) <= n:
            return [], _trim(list(a))
        k = len(a) - n  # quotient length, at most n
        if n < 48 or k < 16:
            return _backend.divrem(a, self._q, p)
        qrev = _backend.mul(a[::-1][:k], self.reciprocal()[:k], p)[:k]
        qrev += [0] * (k - len(qrev))
        q = _trim(qrev[::-1])
        # only the low n coefficients of a - q*Q survive
        prod = _backend.mul(q, self._q, p)[:n] if q else []
        return q, sub_lists(a[:n], prod, p)

    def divrem_list(self, a):
        """Quotient and remainder of a coefficient list by Q."""
        n = self.n
        r = _trim(list(a))
        if len(r) <= 2 * n:
            return self._divrem_short(r)
        q = [0] * (len(r) - n)
        while len(r) > 2 * n:
            top = len(r) - 2 * n
            qw, rw = self._divrem_short(r[top:])
            q[top:top + len(qw)] = qw
            r = _trim(r[:top] + rw)
        qw, r = self._divrem_short(r)
        q[:len(qw)] = qw
        return _trim(q), r

    def reduce_list(self, a):
        if len(a) <= self.n:
            return _trim(list(a))
        return self.divrem_list(a)[1]

    def reduce(self, a):
        return DensePoly._raw(self.field, self.reduce_list(a.coeffs))

    def mul_list(self, a, b):
        return self.reduce_list(_backend.mul(a, b, self.p))

    def mul(self, a, b):
        return DensePoly._raw(self.field, self.mul_list(a.coeffs, b.coeffs))

    def sqr(self, a):
        return self.mul(a, a)

    def pow_list(self, a, e):
        if e < 0:
            a, e = self.inv_list(a), -e
        result = [1]
        base = self.reduce_list(a)
        for bit in bin(e)[2:]:
            result = self.mul_list(result, result)
            if bit == "1":
                result = self.mul_list(result, base)
        return result

    def pow(self, a, e):
        return DensePoly._raw(self.field, self.pow_list(a.coeffs, e))

    def inv_list(self, a):
        a = self.reduce_list(a)
        if not a:
            raise ZeroElementError("zero is not invertible")
        try:
            return invmod_lists(a, self._q, self.p)
        except ZeroDivisionError:
            raise ZeroElementError("element is not invertible modulo Q") from None

    def inv(self, a):
        return DensePoly._raw(self.field, self.inv_list(a.coeffs))

    def __repr__(self):
        return f"ModulusContext(deg {self.n} over F_{self.p})"


def modpow(base, e, ctx):
    """base^e modulo the context's modulus (e a nonnegative Python int)."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return ctx.pow(base, e)
