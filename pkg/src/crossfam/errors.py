"""Exception types shared across the package."""

from __future__ import annotations


class CrossfamError(Exception):
    """Base class for all package errors."""


class DegenerateInput(CrossfamError, ValueError):
    """Input violates general position or another geometric precondition."""


class ReductionExhausted(CrossfamError):
    """The same-type reducer hit its width floor or round limit."""


class InsufficientPoints(CrossfamError):
    """The instance is too small for the requested bundle/family sizes."""


class InvariantViolation(CrossfamError, AssertionError):
    """A certificate failed its verifier where the construction guarantees success."""


class OracleTimeout(CrossfamError):
    """An exact search exceeded its budget.

    ``best`` carries the best solution found so far (not proven optimal).
    """

    def __init__(self, message: str, best=None, nodes: int = 0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes


class SchemaError(CrossfamError, ValueError):
    """A JSON document does not match the expected interchange format."""


class SnapTooCoarse(DegenerateInput):
    """A rational snap of an irrational construction lost a required property."""
