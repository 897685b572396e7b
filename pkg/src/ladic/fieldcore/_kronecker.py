"""Large-operand multiplication by Kronecker substitution.

Both operands are packed into big integers (one fixed-width slot per
coefficient), multiplied once, and unpacked.  With gmpy2 present the product
runs through GMP's FFT multiplication; otherwise CPython's own bignum code
is used.
"""

import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None


def _pack(a, w):
    arr = np.asarray(a, dtype=np.uint64)
    raw = arr.view(np.uint8).reshape(len(a), 8)
    if w == 8:
        return int.from_bytes(raw.tobytes(), "little")
    if w < 8:
        return int.from_bytes(np.ascontiguousarray(raw[:, :w]).tobytes(), "little")
    slots = np.zeros((len(a), w), dtype=np.uint8)
    slots[:, :8] = raw
    return int.from_bytes(slots.tobytes(), "little")


def _unpack(c, count, w, p):
    raw = np.frombuffer(c.to_bytes(count * w, "little"), dtype=np.uint8).reshape(count, w)
    if w <= 8:
        slots = np.zeros((count, 8), dtype=np.uint8)
        slots[:, :w] = raw
        return (slots.view("<u8").ravel() % np.uint64(p)).tolist()
    if w <= 16 and p < 2 ** 31:
        lo = np.ascontiguousarray(raw[:, :8]).view("<u8").ravel() % np.uint64(p)
        slots = np.zeros((count, 8), dtype=np.uint8)
        slots[:, :w - 8] = raw[:, 8:]
        hi = slots.view("<u8").ravel() % np.uint64(p)
        shift = np.uint64(pow(2, 64, p))
        return ((lo + hi * shift % np.uint64(p)) % np.uint64(p)).tolist()
    data = raw.tobytes()
    return [int.from_bytes(data[i * w:(i + 1) * w], "little") % p for i in range(count)]


def kron_mul(a, b, p):
    """Product of coefficient lists a, b over Z/pZ (both nonempty)."""
    bound = min(len(a), len(b)) * (p - 1) ** 2
    w = max(1, (bound.bit_length() + 7) // 8)
    ia = _pack(a, w)
    if a is b:
        c = int(gmpy2.mpz(ia) ** 2) if gmpy2 is not None else ia * ia
    else:
        ib = _pack(b, w)
        c = int(gmpy2.mpz(ia) * gmpy2.mpz(ib)) if gmpy2 is not None else ia * ib
    count = len(a) + len(b) - 1
    out = _unpack(c, count, w, p)
    while out and not out[-1]:
        out.pop()
    return out
