"""Independent reference computations shared by the test modules."""

import numpy as np

from ladic.elliptic import ECPoint
from ladic.fieldcore import DensePoly


def brute_count(E):
    p = E.p
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    return 1 + sum(squares.get(E.rhs(x), 0) for x in range(p))


def brute_points(E):
    p = E.p
    return [ECPoint(x, y) for x in range(p) for y in range(p) if (y * y - E.rhs(x)) % p == 0]


def minpoly_oracle(ctx, x):
    """Minimal polynomial over F_p of x in K_1, by linear algebra on F_p-coordinates."""
    # successive powers of x as F_p-vectors; first dependency gives the minpoly
    p = ctx.p
    vecs = []
    power = ctx.one(1)
    n = ctx.size(1) * ctx.r
    for _ in range(n + 1):
        vecs.append(power.ravel().tolist())
        M = np.array(vecs, dtype=object).T
        kernel = _nullspace_mod(M, p)
        if kernel is not None:
            c = [int(v) for v in kernel]
            inv = pow(c[-1], -1, p)
            return DensePoly(ctx.field, [v * inv % p for v in c])
        power = ctx.mul(power, x)
    raise AssertionError("no dependency")


def _nullspace_mod(M, p):
    rows, cols = M.shape
    A = [[int(M[r][c]) % p for c in range(cols)] for r in range(rows)]
    piv = []
    r = 0
    for c in range(cols):
        k = next((k for k in range(r, rows) if A[k][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [v * inv % p for v in A[r]]
        for k in range(rows):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [(a - f * b) % p for a, b in zip(A[k], A[r])]
        piv.append(c)
        r += 1
    if len(piv) == cols:
        return None
    free = next(c for c in range(cols) if c not in piv)
    v = [0] * cols
    v[free] = 1
    for row, c in enumerate(piv):
        v[c] = -A[row][free] % p
    return v
