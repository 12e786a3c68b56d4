"""Error types shared across the library.

Every error carries a short stable ``code`` string.  The command line
tools and the HTTP service report that code to callers, so changing one
is a compatibility break.
"""

from __future__ import annotations

__all__ = [
    "ClusterAlgError",
    "MalformedInputError",
    "AmbientMismatchError",
    "PolynomialDivisionError",
    "InvalidPrimeError",
    "UndefinedValuationError",
    "TermBudgetError",
    "NotSkewSymmetrizableError",
    "InvalidIndexError",
    "InvalidQuiverError",
    "NotSkewSymmetricError",
    "IsolatedIndexError",
    "StarfishNotEstablishedError",
    "NotInAdjacentRingError",
    "OracleRefusedError",
    "ExprSyntaxError",
    "InexactDivisionError",
    "UnknownFieldError",
]


class ClusterAlgError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class MalformedInputError(ClusterAlgError):
    """Input data does not have the documented shape."""

    code = "malformed-input"


class AmbientMismatchError(ClusterAlgError):
    """Two polynomials from rings with different variable counts were mixed."""

    code = "ambient-mismatch"


class PolynomialDivisionError(ClusterAlgError):
    """Division by the zero polynomial."""

    code = "division-by-zero"


class InvalidPrimeError(ClusterAlgError):
    """Multiplicity was requested against a zero or unit polynomial."""

    code = "invalid-prime"


class UndefinedValuationError(ClusterAlgError):
    """A valuation of the zero element was requested."""

    code = "undefined-valuation"


class TermBudgetError(ClusterAlgError):
    """An exact division built a quotient beyond the configured term budget."""

    code = "term-budget-exceeded"


class NotSkewSymmetrizableError(ClusterAlgError):
    """The principal part of a matrix admits no positive integer symmetrizer."""

    code = "not-skew-symmetrizable"


class InvalidIndexError(ClusterAlgError):
    """A variable or mutation index is out of range or not exchangeable."""

    code = "invalid-index"


class InvalidQuiverError(ClusterAlgError):
    """An ice quiver has loops, two-cycles or arrows between frozen vertices."""

    code = "invalid-quiver"


class NotSkewSymmetricError(ClusterAlgError):
    """A quiver was requested for a matrix whose principal part is not skew-symmetric."""

    code = "not-skew-symmetric"


class IsolatedIndexError(ClusterAlgError):
    """An exchange polynomial equal to 2 was used where the coefficients form a field."""

    code = "isolated-index"


class StarfishNotEstablishedError(ClusterAlgError):
    """The operation is only justified once the starfish hypothesis is known to hold."""

    code = "starfish-not-established"


class NotInAdjacentRingError(ClusterAlgError):
    """An element is not a Laurent polynomial in the required adjacent cluster."""

    code = "not-in-adjacent-ring"


class OracleRefusedError(ClusterAlgError):
    """The brute force factor oracle was asked to run outside its bounds."""

    code = "oracle-refused"


class ExprSyntaxError(ClusterAlgError):
    """An element expression could not be parsed."""

    code = "parse-error"

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class InexactDivisionError(ClusterAlgError):
    """An element expression divides by something that does not divide exactly."""

    code = "inexact-division"


class UnknownFieldError(ClusterAlgError):
    """A coefficient field description was not recognised."""

    code = "unknown-field"
