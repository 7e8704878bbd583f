"""Euler modulo products zeta_{m,n}(s) and their incomplete (p > M) parts.

Every product over a residue class here has the shape prod_p f(p) with
log f(p) = sum_t g(t) p^-t.  Primes below DIRECT_LIMIT are multiplied in
directly; for the rest the logarithm is sum_t g(t) P_{m,n}^{>=DIRECT_LIMIT}(t),
where the prime sum is split into an exact finite part (up to M) and the
series tail P_{m,n}(M, t).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .primes import class_power_sums, direct_primes, power_sum_bound, series_lower_bound
from .primezeta import p_mod_incomplete
from .specfun import PrecisionContext, PrecisionError

# generous cap on the number of series terms; real runs stop far earlier
_T_LIMIT = 2000


def _check(m: int, n: int, s: int, s_min: int):
    if m < 1 or not 1 <= n <= m:
        raise ValueError(f"invalid residue class {n} mod {m}")
    if s < s_min:
        raise ValueError(f"s must be >= {s_min}")


def class_product(m: int, n: int, ctx: PrecisionContext, *, factor: Callable,
                  coeff: Callable[[int], Fraction], envelope: Callable[[int], float],
                  key: tuple):
    """prod over primes p = n (mod m) of f(p), given log f(p) = sum_t coeff(t) p^-t.

    ``factor(p)`` returns f(p) at working precision for the directly handled
    primes.  ``envelope(t)`` bounds |coeff(u)| for every u >= t; it only
    drives truncation.  coeff(1) must vanish, since P_{m,n}(M, 1) diverges.
    """

    def compute():
        mp = ctx.mp
        logsum = mp.zero
        for p in direct_primes(ctx):
            if p % m == n % m:
                logsum += mp.log(factor(p))
        if coeff(1):
            raise ValueError("the t = 1 coefficient must vanish")
        tol = ctx.tail_tol / 1000
        t_end = 2
        while envelope(t_end) * power_sum_bound(t_end, ctx) >= tol:
            t_end += 1
            if t_end > _T_LIMIT:
                raise PrecisionError("class product series does not converge")
        # prime sums carry absolute errors near the working precision, and
        # the coefficients amplify them by up to envelope(t_end)
        wide = ctx.widened(math.ceil(math.log10(max(1.0, envelope(t_end)))))
        wmp = wide.mp
        lower = series_lower_bound(wide)
        M = wide.cutoff
        series = wmp.zero
        for t in range(2, t_end):
            c = coeff(t)
            if not c:
                continue
            value = class_power_sums(m, t, wide, lower)[n % m]
            # beyond this point P_{m,n}(M, t) is below tolerance even after scaling
            if envelope(t) * 2 * wmp.mpf(M) ** (1 - t) / (t - 1) >= tol:
                value += p_mod_incomplete(m, n, M, t, wide)
            series += (wmp.mpf(c.numerator) / c.denominator) * value
        return mp.exp(logsum + mp.mpf(series))

    return ctx.memo(key + (m, n), compute)


def zeta_mod(m: int, n: int, s: int, ctx: PrecisionContext):
    """zeta_{m,n}(s) = prod over primes p = n (mod m) of (1 - p^-s)^-1, s >= 2."""
    _check(m, n, s, 2)
    mp = ctx.mp
    return class_product(
        m, n, ctx,
        factor=lambda p: 1 / (1 - mp.mpf(p) ** (-s)),
        coeff=lambda t: Fraction(s, t) if t % s == 0 else Fraction(0),
        envelope=lambda t: 1.0,
        key=("zeta_mod", s),
    )


def zeta_mod_incomplete(m: int, n: int, M: int, s: int, ctx: PrecisionContext):
    """zeta_{m,n}(M, s): the part of the product over primes p > M."""
    _check(m, n, s, 2)

    def compute():
        mp = ctx.mp
        total = mp.zero
        t = 1
        while True:
            x = s * t
            if t > 1 and 2 * mp.mpf(M) ** (1 - x) / (x - 1) < ctx.tail_tol / 1000:
                break
            total += p_mod_incomplete(m, n, M, x, ctx) / t
            t += 1
        return mp.exp(total)

    return ctx.memo(("zeta_mod_M", m, n, M, s), compute)
