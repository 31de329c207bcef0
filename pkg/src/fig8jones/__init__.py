"""Arbitrary-precision numerics for the figure-eight knot.

Evaluates the colored Jones polynomial at real arguments e^{xi/N},
the contour-integral quantum dilogarithm family, the saddle-point
growth predictor, and the flat-connection invariants (longitude
eigenvalue, Chern-Simons value, adjoint torsion) attached to xi.
"""

from .errors import (
    DomainError,
    Fig8Error,
    InconsistencyError,
    InvalidRootError,
    PoleError,
    PrecisionError,
    QuadratureError,
    SingularityError,
)
from .precision import BigComplex, PrecisionContext

__version__ = "0.1.0"

__all__ = [
    "BigComplex",
    "PrecisionContext",
    "Fig8Error",
    "DomainError",
    "PoleError",
    "SingularityError",
    "InvalidRootError",
    "InconsistencyError",
    "PrecisionError",
    "QuadratureError",
    "__version__",
]
