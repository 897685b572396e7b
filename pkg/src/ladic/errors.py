"""Exception types shared across the package."""


class LadicError(Exception):
    """Base class for all package errors."""


class InvalidParameters(LadicError, ValueError):
    """A (p, ell, strategy) combination violates a construction precondition."""


class ZeroElementError(LadicError, ValueError):
    """An operation that needs a nonzero field element received zero."""


class IterationCapExceeded(LadicError, RuntimeError):
    """A randomized search ran past its iteration cap."""


class CorruptStateError(LadicError, RuntimeError):
    """Internal data fails an invariant that a valid tower always satisfies."""


class NotInSubfield(LadicError, ValueError):
    """Projection target does not contain the element."""


class TowerFileError(LadicError, ValueError):
    """A tower file cannot be read or fails validation."""


class VersionMismatch(TowerFileError):
    """A tower file carries an unsupported format version."""
