"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FuzzintError(Exception):
    """Base class for every error raised by this package."""


class RealizationMismatchError(FuzzintError, TypeError):
    """Exact-rational and float scalars were mixed in one computation."""


class UnsupportedRealizationError(FuzzintError):
    """An operator defined only for floats was evaluated on exact data."""


class UnitIntervalError(FuzzintError, ValueError):
    """A scalar fell outside [0, 1] (or was not a finite number)."""


class DomainError(FuzzintError, ValueError):
    """Inputs violate an operation's stated domain, e.g. f + a exceeds 1."""


class PreconditionError(FuzzintError, ValueError):
    """A check was invoked on inputs failing its precondition."""


class ContractError(FuzzintError):
    """A constructive helper was fed data that does not satisfy its contract."""


class CapacityError(FuzzintError, ValueError):
    """A set-function table violates the capacity axioms.

    ``constraint`` names the broken rule ("empty-set", "normalization",
    "monotonicity", "coverage"); ``witness`` carries the offending subsets
    and values when applicable.
    """

    def __init__(self, constraint: str, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.constraint = constraint
        self.witness = witness


class SchemaError(FuzzintError, ValueError):
    """JSON input does not match the documented schema."""
