"""Exception types shared across the package.

The CLI maps these onto exit codes: precision shortfalls exit 3, broken
invariants exit 4.
"""


class FFZetaError(Exception):
    """Base class for package errors."""


class FieldMismatch(FFZetaError, TypeError):
    """Operands live over different fields, places or variables."""


class PrecisionError(FFZetaError):
    """Requested precision cannot be certified with the data supplied."""


class InvariantError(FFZetaError):
    """An internal consistency check failed."""


class NotInvertible(FFZetaError, ZeroDivisionError):
    """Attempted to invert zero or a non-unit."""
