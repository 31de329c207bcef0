"""Branch-controlled elementary kernels and the closed-form scalar invariants.

Branch conventions used throughout the package:

* ``log`` is principal with the cut on the negative real axis and
  ``Im log in (-pi, pi]``.
* ``arccosh(x) = log(x - i*sqrt(1 - x^2))`` with the principal square root.
* ``Li2`` (the dilogarithm ``-int_0^z log(1-t)/t dt``) has its cut on
  ``(1, oo)``; points exactly on a cut are evaluated as limits from the
  upper half plane (``+0i`` convention).

The growth threshold ``kappa = arccosh(3/2) = log((3+sqrt(5))/2)`` is an
arccosh branch point of ``phi``, where half of the working digits die.
``kappa`` and ``phi`` therefore run their internals (including input
coercion) at twice the ambient precision; every other operation uses the
ordinary 32 guard bits and rounds once at return.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import DomainError, PoleError, SingularityError
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

__all__ = [
    "Invariants",
    "log_branch",
    "arccosh_branch",
    "dilog",
    "kappa",
    "phi",
    "S_value",
    "S_tilde_value",
    "T_value",
    "F",
    "F_prime",
    "F_double_prime",
    "invariants",
]


# ---------------------------------------------------------------------------
# elementary branches


def log_branch(z, ctx: PrecisionContext = None) -> BigComplex:
    """Principal logarithm, cut along (-oo, 0), Im in (-pi, pi]."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        if z == 0:
            raise DomainError("log_branch is undefined at 0")
        val = mp.log(z)
    return ensure_finite(round_to(val, ctx.bits), "log_branch")


def _arccosh_raw(z: mpc) -> mpc:
    return mp.log(z - mpc(0, 1) * mp.sqrt(1 - z * z))


def arccosh_branch(z, ctx: PrecisionContext = None) -> BigComplex:
    """arccosh(z) = log(z - i*sqrt(1 - z^2)) on the branches above."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        val = _arccosh_raw(z)
    return ensure_finite(round_to(val, ctx.bits), "arccosh_branch")


# ---------------------------------------------------------------------------
# dilogarithm
#
# Strategy (guaranteed geometric convergence at any precision):
#   |z| <= 1/2          power series sum z^k/k^2
#   |1-z| <= 1/2        reflection through Li2(1-z)
#   |z| >= 2            inversion through Li2(1/z)
#   remaining annulus   series in w = log z with Bernoulli-number
#                       coefficients (|w| <= sqrt(log(2)^2 + pi^2) < 2*pi)


def _log_lower_on_negative_axis(w: mpc) -> mpc:
    # Principal log, except that a negative real argument takes Im = -pi.
    # Used where the +0i convention on z puts the intermediate value on
    # the lower lip of the log cut.
    val = mp.log(w)
    if w.imag == 0 and w.real < 0:
        val = mpc(val.real, -mp.pi)
    return val


def _dilog_series(z: mpc) -> mpc:
    eps = mpf(2) ** (-mp.mp.prec - 4)
    total = z
    zk = z
    k = 1
    while True:
        k += 1
        zk *= z
        term = zk / (k * k)
        total += term
        if abs(term) <= eps * (abs(total) + 1):
            return total
        if k > 64 * mp.mp.prec:
            raise SingularityError("dilog power series failed to converge")


def _dilog_log_series(w: mpc, on_upper_cut: bool) -> mpc:
    # Li2(e^w) for |w| < 2*pi:
    #   pi^2/6 + w - w*log(-w) - w^2/4 - sum_{m>=1} B_{2m} w^{2m+1} / ((2m)*(2m+1)!)
    eps = mpf(2) ** (-mp.mp.prec - 4)
    if on_upper_cut:
        logneg = mpc(mp.log(abs(w)), -mp.pi)
    elif w.imag == 0 and w.real > 0:
        logneg = _log_lower_on_negative_axis(-w)
    else:
        logneg = mp.log(-w)
    acc = mp.pi**2 / 6 + w - w * logneg - w * w / 4
    w2 = w * w
    wp = w * w2  # w^{2m+1}
    fact = mpf(6)  # (2m+1)! at m=1
    m = 1
    while True:
        term = mp.bernoulli(2 * m) * wp / ((2 * m) * fact)
        acc -= term
        if abs(term) <= eps * (abs(acc) + 1):
            return acc
        m += 1
        wp *= w2
        fact *= (2 * m) * (2 * m + 1)
        if m > 64 * mp.mp.prec:
            raise SingularityError("dilog log-series failed to converge")


def _dilog_raw(z: mpc) -> mpc:
    if z == 0:
        return mpc(0)
    if z == 1:
        return mpc(mp.pi**2 / 6)
    az = abs(z)
    if az <= mpf(1) / 2:
        return _dilog_series(z)
    if abs(1 - z) <= mpf(1) / 2:
        # Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        if z.imag == 0 and z.real > 1:
            log1mz = _log_lower_on_negative_axis(1 - z)
        else:
            log1mz = mp.log(1 - z)
        return mp.pi**2 / 6 - mp.log(z) * log1mz - _dilog_series(1 - z)
    if az >= 2:
        # Li2(z) = -pi^2/6 - log(-z)^2/2 - Li2(1/z)
        if z.imag == 0 and z.real > 1:
            logneg = mpc(mp.log(az), -mp.pi)
        else:
            logneg = mp.log(-z)
        return -mp.pi**2 / 6 - logneg * logneg / 2 - _dilog_series(1 / z)
    w = mp.log(z)
    return _dilog_log_series(w, on_upper_cut=(z.imag == 0 and z.real > 1))


def dilog(z, ctx: PrecisionContext = None) -> BigComplex:
    """Dilogarithm Li2(z) on the principal branch (cut on (1, oo)).

    Relative error is below ``ctx.tol``; points on the cut evaluate as
    limits from the upper half plane.
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        val = _dilog_raw(z)
    return ensure_finite(round_to(val, ctx.bits), "dilog")


# ---------------------------------------------------------------------------
# the scalar invariants


def kappa(ctx: PrecisionContext = None) -> mpf:
    """Growth threshold arccosh(3/2) = log((3+sqrt(5))/2) = 0.9624...

    Computed at twice the context precision and returned unrounded:
    downstream evaluation of ``phi`` at this point sits on a square-root
    branch point, which halves the accurate digits of whatever it is fed.
    """
    ctx = ctx or PrecisionContext()
    with workprec(2 * ctx.bits + 64):
        val = mp.log((3 + mp.sqrt(mpf(5))) / 2)
    return val


def _phi_raw(z) -> mpc:
    # Doubles the ambient precision, coercing the input inside the wider
    # block so that over-resolved inputs (kappa above) keep their digits.
    prec = mp.mp.prec
    with workprec(2 * prec + 64):
        z = to_mpc(z)
        if z.imag == 0:
            c2 = 2 * mp.cosh(z.real)
            if c2 > 3:
                # real logarithm form, valid for |Re xi| > kappa
                val = mpc(mp.log((c2 - 1 + mp.sqrt((c2 - 1) ** 2 - 4)) / 2))
            else:
                val = _arccosh_raw(mpc(c2 - 1) / 2)
        else:
            val = _arccosh_raw(mp.cosh(z) - mpf(1) / 2)
    return val


def phi(xi, ctx: PrecisionContext = None) -> BigComplex:
    """Saddle location parameter: arccosh(cosh(xi) - 1/2).

    Real and in (0, xi) for real xi above the growth threshold; equals
    -i*pi/3 at xi = 0 and vanishes at the threshold itself.
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        val = _phi_raw(xi)
    return ensure_finite(round_to(val, ctx.bits), "phi")


def S_value(xi, ctx: PrecisionContext = None) -> BigComplex:
    """Exponential growth rate numerator:

        S(xi) = Li2(e^{-xi-phi}) - Li2(e^{-xi+phi}) + xi*phi.

    Positive real for real xi above the growth threshold, zero at the
    threshold, and i*2.02988... (i times the hyperbolic volume of the
    knot complement) at xi = 0.
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(xi)
        p = _phi_raw(z)
        val = _dilog_raw(mp.exp(-z - p)) - _dilog_raw(mp.exp(-z + p)) + z * p
    return ensure_finite(round_to(val, ctx.bits), "S_value")


def S_tilde_value(xi, ctx: PrecisionContext = None) -> BigComplex:
    """Companion growth rate with the 2*pi*i shifted linear term:

        S~(xi) = Li2(e^{-xi-phi}) - Li2(e^{-xi+phi}) + (xi-2*pi*i)(phi+2*pi*i).
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(xi)
        p = _phi_raw(z)
        two_pi_i = 2 * mp.pi * mpc(0, 1)
        val = (
            _dilog_raw(mp.exp(-z - p))
            - _dilog_raw(mp.exp(-z + p))
            + (z - two_pi_i) * (p + two_pi_i)
        )
    return ensure_finite(round_to(val, ctx.bits), "S_tilde_value")


def _pole_band(ctx: PrecisionContext) -> mpf:
    # Below this relative size a radicand is indistinguishable from an
    # exact zero at the working precision.
    return mpf(2) ** (-(working_bits(ctx)) + 4)


def T_value(xi, ctx: PrecisionContext = None) -> BigComplex:
    """Torsion-side scale factor 2 / sqrt((2cosh(xi)+1)(2cosh(xi)-3)).

    Raises :class:`PoleError` where the radicand vanishes (xi = +-kappa
    and the other zeros of the product).
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(xi)
        c2 = 2 * mp.cosh(z)
        radicand = (c2 + 1) * (c2 - 3)
        if abs(radicand) <= _pole_band(ctx) * (abs(c2) + 3) ** 2:
            raise PoleError(f"T_value has a pole at xi={xi} (radicand vanishes)")
        val = 2 / mp.sqrt(radicand)
    return ensure_finite(round_to(val, ctx.bits), "T_value")


# ---------------------------------------------------------------------------
# limit potential F and its derivatives (strip -1 < Re z < 1)


def _check_strip(z: mpc, what: str):
    if not (-1 < z.real < 1):
        raise DomainError(f"{what} requires -1 < Re z < 1, got Re z = {z.real}")


def F(z, xi, ctx: PrecisionContext = None) -> BigComplex:
    """Limit potential on the strip -1 < Re z < 1:

        F(z) = (Li2(e^{-xi(1+z)}) - Li2(e^{-xi(1-z)})) / xi + xi*z.

    Real on real z; takes its maximum S(xi)/xi at z = phi(xi)/xi when
    xi exceeds the growth threshold.
    """
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        x = to_real(xi)
        if x == 0:
            raise DomainError("F requires a nonzero growth parameter")
        _check_strip(z, "F")
        val = (_dilog_raw(mp.exp(-x * (1 + z))) - _dilog_raw(mp.exp(-x * (1 - z)))) / x + x * z
    return ensure_finite(round_to(val, ctx.bits), "F")


def F_prime(z, xi, ctx: PrecisionContext = None) -> BigComplex:
    """F'(z) = log(e^xi + e^-xi - e^{xi z} - e^{-xi z}) on the strip."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        x = to_real(xi)
        _check_strip(z, "F_prime")
        arg = 2 * mp.cosh(x) - mp.exp(x * z) - mp.exp(-x * z)
        if abs(arg) <= _pole_band(ctx) * 2 * mp.cosh(x):
            raise SingularityError(f"F_prime: log argument vanishes at z={z}")
        val = mp.log(arg)
    return ensure_finite(round_to(val, ctx.bits), "F_prime")


def F_double_prime(z, xi, ctx: PrecisionContext = None) -> BigComplex:
    """F''(z) = xi (e^{-xi z} - e^{xi z}) / (e^xi + e^-xi - e^{xi z} - e^{-xi z})."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        z = to_mpc(z)
        x = to_real(xi)
        _check_strip(z, "F_double_prime")
        den = 2 * mp.cosh(x) - mp.exp(x * z) - mp.exp(-x * z)
        if abs(den) <= _pole_band(ctx) * 2 * mp.cosh(x):
            raise SingularityError(f"F_double_prime: denominator vanishes at z={z}")
        val = x * (mp.exp(-x * z) - mp.exp(x * z)) / den
    return ensure_finite(round_to(val, ctx.bits), "F_double_prime")


# ---------------------------------------------------------------------------
# bundled record


@dataclass(frozen=True)
class Invariants:
    """All closed-form scalars attached to one growth parameter."""

    xi: mpf
    kappa: mpf
    phi: BigComplex
    S: BigComplex
    S_tilde: BigComplex
    T: BigComplex


def invariants(xi, ctx: PrecisionContext = None) -> Invariants:
    """Evaluate every closed-form invariant at one xi."""
    ctx = ctx or PrecisionContext()
    with workprec(working_bits(ctx)):
        x = to_real(xi)
    return Invariants(
        xi=x,
        kappa=round_to(kappa(ctx), ctx.bits),
        phi=phi(x, ctx),
        S=S_value(x, ctx),
        S_tilde=S_tilde_value(x, ctx),
        T=T_value(x, ctx),
    )
