"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the classes coarse.
"""


class UnitLiftError(Exception):
    """Base class for all library errors."""


class ShapeError(UnitLiftError, ValueError):
    """Operands do not share a descriptor or a payload has the wrong shape."""


class ValidationError(UnitLiftError, ValueError):
    """A ring descriptor, group table or ideal chain is malformed."""


class NotAUnitError(UnitLiftError, ArithmeticError):
    """The element has no two-sided inverse."""

    def __init__(self, message, *, failing_prime=None):
        super().__init__(message)
        self.failing_prime = failing_prime


class PreconditionError(UnitLiftError, ValueError):
    """A documented precondition of an operation does not hold."""


class UnsupportedError(UnitLiftError, NotImplementedError):
    """The operation is not available for this descriptor."""


class ResourceError(UnitLiftError, RuntimeError):
    """An enumeration or benchmark cap would be exceeded."""


class InternalError(UnitLiftError, AssertionError):
    """A postcondition failed. This signals a bug, never bad input."""
