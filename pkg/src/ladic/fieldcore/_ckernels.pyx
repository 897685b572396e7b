# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled polynomial kernels over Z/pZ (p < 2**31).

Same contract as ``_pykernels``: lists of canonical ints, lowest degree
first, normalized outputs.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy
from libc.stdint cimport uint64_t

cdef Py_ssize_t CUTOFF = 32
cdef uint64_t TOP = (<uint64_t> 1) << 63

KARATSUBA_CUTOFF = 32
MAX_MODULUS = 2 ** 31


cdef uint64_t _inv(uint64_t a, uint64_t p) nogil:
    cdef uint64_t result = 1, base = a % p, e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


cdef uint64_t* _alloc(Py_ssize_t n) except NULL:
    cdef uint64_t* buf = <uint64_t*> malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    return buf


cdef uint64_t* _load(object seq, Py_ssize_t n, Py_ssize_t cap) except NULL:
    cdef uint64_t* buf = _alloc(cap)
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <uint64_t> seq[i]
    for i in range(n, cap):
        buf[i] = 0
    return buf


cdef list _store(const uint64_t* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


cdef inline Py_ssize_t _len(const uint64_t* a, Py_ssize_t n) nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef void _school(const uint64_t* a, Py_ssize_t na, const uint64_t* b, Py_ssize_t nb,
                  uint64_t* out, uint64_t p) nogil:
    cdef Py_ssize_t k, i, lo, hi
    cdef uint64_t acc
    for k in range(na + nb - 1):
        lo = k - nb + 1
        if lo < 0:
            lo = 0
        hi = k
        if hi > na - 1:
            hi = na - 1
        acc = 0
        for i in range(lo, hi + 1):
            acc += a[i] * b[k - i]
            if acc >= TOP:
                acc %= p
        out[k] = acc % p


cdef void _kara(const uint64_t* a, const uint64_t* b, Py_ssize_t n,
                uint64_t* out, uint64_t* ws, uint64_t p) nogil:
    # out receives 2n - 1 coefficients; ws needs 8n + 64 scratch entries
    if n <= CUTOFF:
        _school(a, n, b, n, out, p)
        return
    cdef Py_ssize_t m = (n + 1) // 2
    cdef Py_ssize_t k = n - m
    cdef Py_ssize_t i
    cdef uint64_t* sa = ws
    cdef uint64_t* sb = ws + m
    cdef uint64_t* z1 = ws + 2 * m
    cdef uint64_t* rest = ws + 4 * m
    cdef uint64_t c
    _kara(a, b, m, out, rest, p)
    out[2 * m - 1] = 0
    _kara(a + m, b + m, k, out + 2 * m, rest, p)
    for i in range(m):
        sa[i] = a[i]
        sb[i] = b[i]
        if i < k:
            sa[i] += a[m + i]
            if sa[i] >= p:
                sa[i] -= p
            sb[i] += b[m + i]
            if sb[i] >= p:
                sb[i] -= p
    _kara(sa, sb, m, z1, rest, p)
    for i in range(2 * m - 1):
        c = z1[i] + 2 * p - out[i]
        if i < 2 * k - 1:
            c -= out[2 * m + i]
        z1[i] = c % p
    for i in range(2 * m - 1):
        c = out[m + i] + z1[i]
        if c >= p:
            c -= p
        out[m + i] = c


cdef void _mul_into(const uint64_t* A, Py_ssize_t na, const uint64_t* B, Py_ssize_t nb,
                    uint64_t* out, uint64_t* ws, uint64_t* chunk, uint64_t* part,
                    uint64_t p) nogil:
    # na >= nb >= 1; out has na + nb - 1 entries
    cdef Py_ssize_t start, i, clen, nout = na + nb - 1
    cdef uint64_t c
    if nb <= CUTOFF:
        _school(A, na, B, nb, out, p)
        return
    if na == nb:
        _kara(A, B, nb, out, ws, p)
        return
    memset(out, 0, nout * sizeof(uint64_t))
    start = 0
    while start < na:
        clen = nb if start + nb <= na else na - start
        memset(chunk, 0, nb * sizeof(uint64_t))
        memcpy(chunk, A + start, clen * sizeof(uint64_t))
        _kara(chunk, B, nb, part, ws, p)
        for i in range(2 * nb - 1):
            if start + i < nout:
                c = out[start + i] + part[i]
                if c >= p:
                    c -= p
                out[start + i] = c
        start += nb


def mul(a, b, uint64_t p):
    """Product of two polynomials; schoolbook below the cutoff, Karatsuba above."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    if na < nb:
        a, b = b, a
        na, nb = nb, na
    cdef uint64_t* A = _load(a, na, na)
    cdef uint64_t* B = _load(b, nb, nb)
    cdef Py_ssize_t nout = na + nb - 1
    cdef uint64_t* out = _alloc(nout)
    cdef uint64_t* ws = _alloc(8 * nb + 64)
    cdef uint64_t* chunk = _alloc(nb)
    cdef uint64_t* part = _alloc(2 * nb)
    try:
        with nogil:
            _mul_into(A, na, B, nb, out, ws, chunk, part, p)
        return _store(out, nout)
    finally:
        free(A)
        free(B)
        free(out)
        free(ws)
        free(chunk)
        free(part)


cdef Py_ssize_t _divrem_inplace(uint64_t* r, Py_ssize_t nr, const uint64_t* b, Py_ssize_t nb,
                                uint64_t* q, uint64_t p) nogil:
    # r becomes the remainder (first nb - 1 entries); returns quotient length
    cdef Py_ssize_t i, j, s
    cdef uint64_t c, inv
    if nr < nb:
        return 0
    inv = _inv(b[nb - 1], p)
    for i in range(nr - 1, nb - 2, -1):
        c = r[i] * inv % p
        s = i - nb + 1
        q[s] = c
        if c == 0:
            continue
        c = p - c
        for j in range(nb):
            r[s + j] = (r[s + j] + c * b[j]) % p
    return nr - nb + 1


def divrem(a, b, uint64_t p):
    """Euclidean division; b must be nonzero."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if na < nb:
        return [], list(a)
    cdef uint64_t* R = _load(a, na, na)
    cdef uint64_t* B = _load(b, nb, nb)
    cdef uint64_t* Q = _alloc(na - nb + 1)
    cdef Py_ssize_t nq
    try:
        with nogil:
            nq = _divrem_inplace(R, na, B, nb, Q, p)
        return _store(Q, nq), _store(R, nb - 1)
    finally:
        free(R)
        free(B)
        free(Q)


cdef Py_ssize_t _submul(uint64_t* s0, Py_ssize_t n0, const uint64_t* q, Py_ssize_t nq,
                        const uint64_t* s1, Py_ssize_t n1, uint64_t p) nogil:
    # s0 -= q * s1 in place; s0 must have room for nq + n1 - 1 entries
    cdef Py_ssize_t i, j, n
    cdef uint64_t c
    if nq == 0 or n1 == 0:
        return n0
    n = nq + n1 - 1
    for i in range(n0, n):
        s0[i] = 0
    for i in range(nq):
        c = q[i]
        if c == 0:
            continue
        c = p - c
        for j in range(n1):
            s0[i + j] = (s0[i + j] + c * s1[j]) % p
    if n < n0:
        n = n0
    return _len(s0, n)


def xgcd(a, b, uint64_t p):
    """Return (g, u, v) with u*a + v*b = g and g monic (or zero)."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t cap = na + nb + 2
    cdef uint64_t* r0 = _load(a, na, cap)
    cdef uint64_t* r1 = _load(b, nb, cap)
    cdef uint64_t* s0 = _load((), 0, cap)
    cdef uint64_t* s1 = _load((), 0, cap)
    cdef uint64_t* t0 = _load((), 0, cap)
    cdef uint64_t* t1 = _load((), 0, cap)
    cdef uint64_t* q = _alloc(cap)
    cdef uint64_t* tmp
    cdef Py_ssize_t n_r0, n_r1, n_s0, n_s1, n_t0, n_t1, nq, i, ntmp
    cdef uint64_t inv
    try:
        n_r0 = _len(r0, na)
        n_r1 = _len(r1, nb)
        s0[0] = 1
        n_s0 = 1
        n_s1 = 0
        n_t0 = 0
        t1[0] = 1
        n_t1 = 1
        with nogil:
            while n_r1 > 0:
                nq = _divrem_inplace(r0, n_r0, r1, n_r1, q, p)
                if n_r0 >= n_r1:
                    n_r0 = _len(r0, n_r1 - 1)
                tmp = r0; r0 = r1; r1 = tmp
                ntmp = n_r0; n_r0 = n_r1; n_r1 = ntmp
                n_s0 = _submul(s0, n_s0, q, nq, s1, n_s1, p)
                tmp = s0; s0 = s1; s1 = tmp
                ntmp = n_s0; n_s0 = n_s1; n_s1 = ntmp
                n_t0 = _submul(t0, n_t0, q, nq, t1, n_t1, p)
                tmp = t0; t0 = t1; t1 = tmp
                ntmp = n_t0; n_t0 = n_t1; n_t1 = ntmp
        if n_r0 == 0:
            return [], [], []
        inv = _inv(r0[n_r0 - 1], p)
        for i in range(n_r0):
            r0[i] = r0[i] * inv % p
        for i in range(n_s0):
            s0[i] = s0[i] * inv % p
        for i in range(n_t0):
            t0[i] = t0[i] * inv % p
        return _store(r0, n_r0), _store(s0, n_s0), _store(t0, n_t0)
    finally:
        free(r0)
        free(r1)
        free(s0)
        free(s1)
        free(t0)
        free(t1)
        free(q)
