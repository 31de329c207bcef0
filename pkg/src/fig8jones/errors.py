"""Exception types shared by every numeric module."""

from __future__ import annotations


class Fig8Error(Exception):
    """Base class for all errors raised by this package."""


class DomainError(Fig8Error, ValueError):
    """An argument lies outside the region where the operation is defined."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole or zero radicand."""


class SingularityError(DomainError):
    """An intermediate value (log argument, denominator) vanished."""


class InvalidRootError(Fig8Error, ValueError):
    """A value passed as a polynomial root does not satisfy the polynomial."""


class InconsistencyError(Fig8Error, ArithmeticError):
    """A structural check failed (e.g. a matrix that must be triangular is not)."""


class PrecisionError(Fig8Error, ArithmeticError):
    """The requested tolerance is not achievable at any sane precision.

    ``suggested_bits`` carries the working precision that would suffice.
    """

    def __init__(self, message: str, suggested_bits: int | None = None):
        super().__init__(message)
        self.suggested_bits = suggested_bits


class QuadratureError(Fig8Error, ArithmeticError):
    """Adaptive refinement did not reach the requested tolerance.

    ``achieved`` holds the best estimate, ``last_delta`` the final
    refinement difference.
    """

    def __init__(self, message: str, achieved=None, last_delta=None):
        super().__init__(message)
        self.achieved = achieved
        self.last_delta = last_delta
