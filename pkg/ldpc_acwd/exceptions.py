"""
Exception hierarchy. Every error raised on purpose by the package derives from
AcwdError; the CLI maps the families below to exit codes.
"""

from typing import Optional


class AcwdError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ParameterError(AcwdError, ValueError):
    """Ensemble parameters or operation preconditions are violated."""

    exit_code = 2


class SchemaError(AcwdError):
    """An ensemble spec document failed validation."""

    exit_code = 2


class ShapeError(AcwdError):
    """
    An expression does not have the shape an operation requires.

    The offending subtree is kept on the exception so callers can report it.
    """

    exit_code = 2

    def __init__(self, message: str, subtree: Optional[object] = None):
        if subtree is not None:
            message = f"{message} (offending subtree: {subtree})"
        super().__init__(message)
        self.subtree = subtree


class SymmetryError(ShapeError):
    """A combinator needs a row/column symmetry flag its operand does not carry."""


class BudgetError(AcwdError):
    """An enumeration or full-syndrome evaluation would exceed its budget."""

    exit_code = 3


class NumericalError(AcwdError):
    exit_code = 4


class SaddlePointError(NumericalError):
    """No saddle point root in the verified bracket."""


class NoCrossingError(NumericalError):
    """The growth rate never becomes nonnegative on the searched interval."""


class CertificateError(NumericalError):
    """The growth rate supremum below the requested weight is not negative."""
