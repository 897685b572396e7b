"""Kernel selection.

The compiled kernels are used when they imported and the modulus is below
their word limit; otherwise the pure-Python kernels run.  ``LADIC_BACKEND``
(``auto``, ``compiled``, ``python``) overrides the choice at import, and
``set_backend`` at run time.
"""

import os

from . import _pykernels
from ._kronecker import kron_mul

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

# operands at least this long go through Kronecker substitution; measured
# crossover against each backend's Karatsuba (see benchmarks/)
KRONECKER_CUTOFF = {"compiled": 400, "python": 48}

_mode = os.environ.get("LADIC_BACKEND", "auto")


def compiled_available():
    return _ckernels is not None


def set_backend(mode):
    """Select ``auto``, ``compiled`` or ``python``; returns the previous mode."""
    global _mode
    if mode not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown backend {mode!r}")
    if mode == "compiled" and _ckernels is None:
        raise RuntimeError("compiled kernels are not built")
    previous, _mode = _mode, mode
    return previous


def backend_name():
    if _mode == "python" or _ckernels is None:
        return "python"
    return "compiled"


def kernels(p):
    if _mode != "python" and _ckernels is not None and p < _ckernels.MAX_MODULUS:
        return _ckernels
    return _pykernels


def mul(a, b, p):
    if not a or not b:
        return []
    k = kernels(p)
    cutoff = KRONECKER_CUTOFF["compiled" if k is _ckernels else "python"]
    if min(len(a), len(b)) >= cutoff:
        return kron_mul(a, b, p)
    return k.mul(a, b, p)


def divrem(a, b, p):
    return kernels(p).divrem(a, b, p)


def xgcd(a, b, p):
    return kernels(p).xgcd(a, b, p)
