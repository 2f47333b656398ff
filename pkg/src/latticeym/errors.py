"""Exception types shared across the package."""

from .matrix_algebra import ModeError, SingularMatrixError


class PreconditionError(ValueError):
    """An operation was called on inputs outside its stated domain."""


__all__ = ["ModeError", "PreconditionError", "SingularMatrixError"]
