"""Naive embedding by root finding, the comparison point for lift-based embed.

To embed level j into level i, find a root of Q_j in F_p[X]/<Q_i> with
Cantor-Zassenhaus over that field (exponent (p^(ell^i) - 1)/2, so the cost
grows like ell^i * M(ell^i)), then evaluate by Horner.  The root found is
one of the conjugates of x_j, so the embedding agrees with the canonical one
up to a power of Frobenius.
"""

import random as _random

from .errors import IterationCapExceeded
from .fieldcore import DensePoly
from .fieldcore.factor import DEFAULT_ITERATION_CAP
from .fieldcore.poly import _trim, add_lists, sub_lists


class _LPoly:
    """Polynomials in Z over L = F_p[X]/<Q> as lists of coefficient lists."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.p

    def trim(self, a):
        while a and not a[-1]:
            a.pop()
        return a

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [[] for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add_lists(out[i + j], self.ctx.mul_list(x, y), self.p)
        return self.trim(out)

    def divmod(self, a, b):
        a = [list(c) for c in a]
        db = len(b) - 1
        inv = self.ctx.inv_list(b[-1])
        q = [[] for _ in range(max(0, len(a) - db))]
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if not c:
                continue
            c = self.ctx.mul_list(c, inv)
            q[k - db] = c
            for t in range(db + 1):
                if b[t]:
                    a[k - db + t] = sub_lists(a[k - db + t], self.ctx.mul_list(c, b[t]), self.p)
        return self.trim(q), self.trim(a[:db])

    def monic(self, a):
        inv = self.ctx.inv_list(a[-1])
        return [self.ctx.mul_list(c, inv) if c else [] for c in a]

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def powmod(self, a, e, m):
        result = [[1]]
        a = self.divmod(a, m)[1]
        for bit in bin(e)[2:]:
            result = self.divmod(self.mul(result, result), m)[1]
            if bit == "1":
                result = self.divmod(self.mul(result, a), m)[1]
        return result


def find_root(P, ctx, rng=None, cap=DEFAULT_ITERATION_CAP):
    """A root in F_p[X]/<Q> of P (F_p coefficients, split over that field)."""
    rng = rng or _random.Random()
    R = _LPoly(ctx)
    p, n = ctx.p, ctx.n
    F = R.monic([[c] if c else [] for c in P.coeffs])
    e = (p ** n - 1) // 2
    for _ in range(cap):
        if len(F) == 2:
            return DensePoly(ctx.field, sub_lists([], F[0], p))
        a = [_trim([rng.randrange(p) for _ in range(n)]), [1]]
        b = R.powmod(a, e, F)
        b = R.trim([sub_lists(b[0] if b else [], [1], p)] + b[1:])
        if not b:
            continue
        g = R.gcd(F, b)
        if 1 < len(g) < len(F):
            h = R.divmod(F, g)[0]
            F = g if len(g) <= len(h) else R.monic(h)
    raise IterationCapExceeded(f"root finding did not finish within {cap} trials")


def baseline_embed(tower, a, target, rng=None):
    """Image of a (level j) in level target via a root of Q_j; see the module docstring."""
    j = a.level
    lvl = tower.level(target)
    if j == 0:
        return tower.element(target, a.poly)
    beta = find_root(tower.level(j).Q, lvl.ctx, rng)
    acc = DensePoly(tower.field, [])
    for c in reversed(a.poly.coeffs):
        acc = lvl.ctx.mul(acc, beta) + c
    return tower.element(target, acc)
