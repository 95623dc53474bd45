"""Exception types raised across the package.

Every error is a ``CodingError`` so callers (the CLI in particular) can
catch one base class and map it to an invalid-input exit status.
"""

from __future__ import annotations


class CodingError(ValueError):
    """Base class for all invalid-input conditions."""


class InvalidModulus(CodingError):
    pass


class PolyDivisionByZero(CodingError, ZeroDivisionError):
    pass


class UndefinedGcd(CodingError):
    pass


class InvalidInput(CodingError):
    pass


class NotAGenerator(CodingError):
    """The polynomial does not divide x^n - 1."""


class InvalidForm(CodingError):
    """Symplectic operation requested on an odd-length word or code."""


class ShapeError(CodingError):
    pass


class NoCodewords(CodingError):
    pass


class BudgetError(CodingError):
    """Exhaustive enumeration would exceed the codeword budget."""


class AugmentForbidden(CodingError):
    pass


class NotASubcode(CodingError):
    pass


class EmptyCode(CodingError):
    pass


class NotSelfOrthogonal(CodingError):
    pass


class NotACD(CodingError):
    pass


class InvalidIndex(CodingError):
    pass


class HypothesisViolated(CodingError):
    pass


class ParseError(CodingError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
