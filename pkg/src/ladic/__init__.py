"""l-adic towers of finite fields: F_p = level 0, level i = F_p[X]/<Q_i> with deg Q_i = ell^i."""

from .errors import (
    CorruptStateError,
    InvalidParameters,
    IterationCapExceeded,
    LadicError,
    NotInSubfield,
    TowerFileError,
    VersionMismatch,
    ZeroElementError,
)
from .fieldcore import DensePoly, ModulusContext, PrimeField, is_irreducible
from .liftpush import BiPoly, FiberRelation, compose, decompose
from .tower import LevelElement, Strategy, Tower, TowerLevel, VerifyReport, create

__version__ = "0.1.0"

__all__ = [
    "BiPoly", "CorruptStateError", "DensePoly", "FiberRelation", "InvalidParameters",
    "IterationCapExceeded", "LadicError", "LevelElement", "ModulusContext", "NotInSubfield",
    "PrimeField", "Strategy", "Tower", "TowerFileError", "TowerLevel", "VerifyReport",
    "VersionMismatch", "ZeroElementError", "compose", "create", "decompose", "is_irreducible",
]
