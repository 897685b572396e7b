"""Pure-Python polynomial kernels over Z/pZ.

Polynomials are lists of ints in [0, p), lowest degree first.  Inputs are
assumed normalized (no trailing zeros) except where noted; outputs are
normalized.  The compiled module ``_ckernels`` exposes the same functions.
"""

KARATSUBA_CUTOFF = 32


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _school(a, b, p):
    na, nb = len(a), len(b)
    out = [0] * (na + nb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _kara_eq(a, b, p):
    # len(a) == len(b); result has 2n - 1 entries, not trimmed
    n = len(a)
    if n <= KARATSUBA_CUTOFF:
        return _school(a, b, p)
    m = (n + 1) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _kara_eq(a0, b0, p)
    z2 = _kara_eq(a1, b1, p)
    k = n - m
    sa = [(a0[i] + a1[i]) % p if i < k else a0[i] for i in range(m)]
    sb = [(b0[i] + b1[i]) % p if i < k else b0[i] for i in range(m)]
    z1 = _kara_eq(sa, sb, p)
    out = z0 + [0] + z2
    for i, c in enumerate(z1):
        c -= z0[i]
        if i < len(z2):
            c -= z2[i]
        out[m + i] = (out[m + i] + c) % p
    return out


def mul(a, b, p):
    """Product of two polynomials; schoolbook below the cutoff, Karatsuba above."""
    if not a or not b:
        return []
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    na, nb = len(a), len(b)
    if nb <= KARATSUBA_CUTOFF:
        return _trim(_school(a, b, p))
    if na == nb:
        return _trim(_kara_eq(a, b, p))
    out = [0] * (na + nb - 1)
    zeros = [0] * nb
    for start in range(0, na, nb):
        chunk = a[start:start + nb]
        if len(chunk) < nb:
            chunk = chunk + zeros[:nb - len(chunk)]
        part = _kara_eq(chunk, b, p)
        for i, c in enumerate(part):
            if start + i < len(out):
                out[start + i] += c
    return _trim([c % p for c in out])


def divrem(a, b, p):
    """Euclidean division; b must be nonzero."""
    nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < nb:
        return [], list(a)
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - nb + 1)
    for i in range(len(a) - 1, nb - 2, -1):
        c = r[i] * inv % p
        if not c:
            continue
        s = i - nb + 1
        q[s] = c
        c = p - c
        for j in range(nb):
            r[s + j] = (r[s + j] + c * b[j]) % p
    del r[nb - 1:]
    return _trim(q), _trim(r)


def _sub_mul(s0, q, s1, p):
    # s0 - q * s1, all lists
    prod = mul(q, s1, p)
    n = max(len(s0), len(prod))
    out = [0] * n
    for i, c in enumerate(s0):
        out[i] = c
    for i, c in enumerate(prod):
        out[i] = (out[i] - c) % p
    return _trim(out)


def xgcd(a, b, p):
    """Return (g, u, v) with u*a + v*b = g and g monic (or zero)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divrem(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub_mul(s0, q, s1, p)
        t0, t1 = t1, _sub_mul(t0, q, t1, p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], p - 2, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0],
            [c * inv % p for c in t0])
