"""
Exception hierarchy for Alliance Lab.

Infeasibility (no alliance, no partition) is an answer, not an error, and is
never raised. These exceptions cover precondition violations and numeric
failures only.
"""

from typing import Optional


class AllianceLabError(Exception):
    """Base class for every error raised by the package."""


class InputError(AllianceLabError, ValueError):
    """An operation was called with arguments that violate its preconditions."""


class GraphParseError(InputError):
    """
    An edge-list file or text could not be parsed.

    Args:
        message: Description of the problem
        line: 1-based line number where the problem was detected
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericError(AllianceLabError, ArithmeticError):
    """The eigensolver failed or produced an inconsistent spectrum."""


class CertificateError(AllianceLabError):
    """A product construction produced a block that fails its target predicate."""
