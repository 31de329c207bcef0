"""Exact evaluation of the colored Jones polynomial of the figure-eight knot.

The N-color evaluation at q = e^{xi/N} uses the cyclotomic sum

    J_N(q) = sum_{k=0}^{N-1} q^{-kN} prod_{l=1}^{k} (1 - q^{N-l})(1 - q^{N+l}),

whose summands are all positive at real q: each factor pair multiplies
two negatives (q > 1) or two positives (q < 1).  Plain left-to-right
accumulation is therefore stable; the only numerical concern is the
sheer magnitude ~ e^{N S(xi)/|xi|} above the growth threshold, which the
precision policy absorbs with linear-in-N guard bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpf

from .errors import DomainError, PrecisionError
from .precision import (
    BigComplex,
    PrecisionContext,
    ensure_finite,
    round_to,
    to_mpc,
    to_real,
    workprec,
    working_bits,
)
from .special_functions import S_value, kappa

__all__ = [
    "JonesEval",
    "SmallXiRecord",
    "SmallXiReport",
    "alexander",
    "habiro_bits",
    "jones_habiro",
    "small_xi_limit_check",
]

# Above this the evaluation is refused rather than attempted.
_MAX_BITS = 1 << 22


@dataclass(frozen=True)
class JonesEval:
    """One colored Jones evaluation at q = e^{xi/N}."""

    N: int
    xi: mpf
    value: mpf
    bits_used: int


def habiro_bits(N: int, xi, ctx: PrecisionContext = None) -> int:
    """Precision policy for the cyclotomic sum.

    Above the growth threshold the sum reaches ~ e^{N S/|xi|}, so the
    working precision scales linearly in N; below it, a logarithmic
    cushion suffices.  The context request is always honored as a floor.
    """
    ctx = ctx or PrecisionContext()
    with workprec(128):
        x = abs(to_real(xi))
        if x > kappa(PrecisionContext(bits=128, tol=1e-20)):
            rate = S_value(x, PrecisionContext(bits=128, tol=1e-20)).real / x
            policy = max(128, int(mp.ceil(N * rate / mp.log(2))) + 64)
        else:
            policy = max(128, 64 + math.ceil(math.log2(max(N, 2))))
    floor = ctx.bits + math.ceil(math.log2(max(N, 2))) + 8
    return max(policy, floor)


def jones_habiro(N: int, xi, ctx: PrecisionContext = None) -> JonesEval:
    """Evaluate the cyclotomic sum exactly at q = e^{xi/N}.

    The running product is updated incrementally,

        term_k = term_{k-1} * q^{-N} (1 - q^{N-k})(1 - q^{N+k}),

    and the needed powers of q are maintained by repeated multiplication
    (never through exp/log round trips), keeping rounding linear in N.
    """
    ctx = ctx or PrecisionContext()
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    bits = habiro_bits(N, xi, ctx)
    if bits > _MAX_BITS:
        raise PrecisionError(
            f"jones_habiro at N={N}, xi={xi} needs ~{bits} bits",
            suggested_bits=bits,
        )
    with workprec(bits):
        x = to_real(xi)
        q = mp.exp(x / N)
        qinv = 1 / q
        q_pow_N = q**N
        q_pow_mN = 1 / q_pow_N
        u = q_pow_N  # q^{N-k}
        v = q_pow_N  # q^{N+k}
        term = mpf(1)
        total = mpf(1)
        for _ in range(1, N):
            u *= qinv
            v *= q
            term *= q_pow_mN * (1 - u) * (1 - v)
            total += term
    value = round_to(total, max(ctx.bits, bits - 16))
    ensure_finite(value, "jones_habiro")
    return JonesEval(N=N, xi=round_to(to_real(xi), bits), value=value, bits_used=bits)


def alexander(t, ctx: PrecisionContext = None) -> BigComplex:
    """Normalized Alexander polynomial of the knot: -t + 3 - 1/t."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        t = to_mpc(t)
        if t == 0:
            raise DomainError("alexander is undefined at t = 0")
        val = -t + 3 - 1 / t
    return ensure_finite(round_to(val, ctx.bits), "alexander")


@dataclass(frozen=True)
class SmallXiRecord:
    N: int
    jones: mpf
    distance: mpf


@dataclass(frozen=True)
class SmallXiReport:
    """Distances |J_N - 1/alexander(e^xi)| over a list of colors."""

    xi: mpf
    limit: mpf
    records: tuple
    converging: bool


def small_xi_limit_check(xi, N_list, ctx: PrecisionContext = None) -> SmallXiReport:
    """Tabulate |J_N - 1/alexander(e^xi)| for N in N_list.

    Only defined in the convergence window |2 cosh(xi) - 2| < 1, i.e.
    |xi| below the growth threshold for real xi.  ``converging`` is False
    when the distance fails to decrease at the two largest N.
    """
    ctx = ctx or PrecisionContext()
    N_list = sorted(int(n) for n in N_list)
    if len(N_list) < 2:
        raise DomainError("need at least two N values to compare")
    with workprec(working_bits(ctx)):
        x = to_real(xi)
        if abs(2 * mp.cosh(x) - 2) >= 1:
            raise DomainError(
                f"|2cosh(xi)-2| = {abs(2 * mp.cosh(x) - 2)} >= 1: outside the "
                "convergence window"
            )
        limit = (1 / alexander(mp.exp(x), ctx)).real
    records = []
    for N in N_list:
        je = jones_habiro(N, xi, ctx)
        with workprec(working_bits(ctx)):
            d = abs(je.value - limit)
        records.append(SmallXiRecord(N=N, jones=round_to(je.value, ctx.bits), distance=d))
    converging = records[-1].distance < records[-2].distance
    return SmallXiReport(
        xi=round_to(to_real(xi), ctx.bits),
        limit=round_to(limit, ctx.bits),
        records=tuple(records),
        converging=converging,
    )
