"""Shared helpers: high-precision comparison must not round through the
ambient (53-bit) mpmath precision, so every distance is computed inside
an explicit workprec block."""

import mpmath as mp
from mpmath import mpc, mpf

import pytest

from fig8jones.precision import PrecisionContext


def dist(a, b, bits: int = 384):
    """|a - b| evaluated at high precision."""
    with mp.mp.workprec(bits):
        return abs(mpc(a) - mpc(b))


def at(bits: int):
    """Context manager for building high-precision constants in tests."""
    return mp.mp.workprec(bits)


def C(re, im="0", bits: int = 384):
    """Build an mpc from decimal strings at high precision."""
    with mp.mp.workprec(bits):
        return mpc(mpf(str(re)), mpf(str(im)))


@pytest.fixture(scope="session")
def ctx128():
    return PrecisionContext(bits=128, tol=1e-30)


@pytest.fixture(scope="session")
def ctx256():
    return PrecisionContext(bits=256, tol=1e-60)
