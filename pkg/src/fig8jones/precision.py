"""Working-precision bookkeeping.

All numeric code in this package runs on mpmath's binary floating point
(``mpf``/``mpc``).  A :class:`PrecisionContext` fixes the caller-visible
precision in bits and a target relative tolerance; operations evaluate
with guard bits on top of ``bits`` and round once on return.

mpmath's precision is process-global state, so parallelism across
evaluations should use processes, not threads.  The functions themselves
are pure: they never mutate their inputs and always restore the global
precision on exit.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import DomainError

# Universal complex scalar carried through every operation.
BigComplex = mpc

# Guard bits added by ordinary closed-form operations.
GUARD_BITS = 32


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in bits plus the target relative tolerance.

    ``bits`` must be at least 64 and ``tol`` must be achievable at that
    precision (``tol >= 2**(-bits+8)``).
    """

    bits: int = 128
    tol: float = 1e-30

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 64:
            raise DomainError(f"bits must be an integer >= 64, got {self.bits}")
        tol = mpf(self.tol)
        if not tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if tol < mpf(2) ** (-self.bits + 8):
            raise DomainError(
                f"tol={self.tol} is below what {self.bits} bits can deliver "
                f"(need tol >= 2^{-self.bits + 8})"
            )

    @property
    def eps(self) -> mpf:
        """Unit roundoff at the context precision."""
        return mpf(2) ** (1 - self.bits)

    def tolerance(self) -> mpf:
        return mpf(self.tol)


DEFAULT_CTX = PrecisionContext()


@contextmanager
def workprec(bits: int):
    """Temporarily set the global binary precision."""
    with mp.mp.workprec(int(bits)):
        yield


def working_bits(ctx: PrecisionContext, guard: int = GUARD_BITS) -> int:
    return ctx.bits + guard


def round_to(value, bits: int):
    """Round an mpf/mpc once to ``bits`` of precision."""
    with mp.mp.workprec(int(bits)):
        return +value


def to_mpc(z) -> mpc:
    """Coerce ints, floats, strings, complex, mpf or mpc to mpc losslessly."""
    if isinstance(z, mpc):
        return z
    if isinstance(z, complex):
        return mpc(z.real, z.imag)
    if isinstance(z, tuple):
        return mpc(*z)
    return mpc(z)


def to_real(x) -> mpf:
    """Coerce a real-valued input to mpf; reject genuinely complex values."""
    if isinstance(x, mpc):
        if x.imag != 0:
            raise DomainError(f"expected a real value, got {x}")
        return x.real
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"expected a real value, got {x}")
        return mpf(x.real)
    return mpf(x)


def is_real(z) -> bool:
    return to_mpc(z).imag == 0


def ensure_finite(value, what: str = "result"):
    """Reject NaN/inf components; returns the value unchanged."""
    z = value
    if isinstance(z, (mpf, int, float)):
        z = mpc(z)
    if isinstance(z, mpc):
        if not (mp.isfinite(z.real) and mp.isfinite(z.imag)):
            raise DomainError(f"{what} is not finite: {value}")
    return value
