"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract, so library code should
raise the most specific class that applies.
"""


class QWalkError(Exception):
    """Base class for all package-specific errors."""


class FileFormatError(QWalkError):
    """A file parsed as JSON but does not match the expected schema."""


class PreconditionError(QWalkError):
    """An operation precondition is violated (bad dimensions, irregular
    matrix, weight mismatch, invalid index, ...)."""


class NonUnitaryError(QWalkError):
    """A matrix required to be unitary fails the tolerance check."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
