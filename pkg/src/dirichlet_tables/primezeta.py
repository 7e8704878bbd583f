"""Dirichlet prime L-series S(s, chi) and prime zeta modulo functions P_{m,n}(s)."""

from __future__ import annotations

import math

from .characters import (Character, char_power, character, character_table, factorize,
                         root_of_unity, totient)
from .lseries import PoleError, log_l_incomplete
from .primes import class_power_sums, primes_up_to
from .specfun import PrecisionContext, mobius


class BranchError(ArithmeticError):
    """L(M, s, chi) is too far from 1 to trust the principal logarithm."""


class ImaginaryResidueError(ArithmeticError):
    """Character inversion left an imaginary part that should have cancelled."""


def _t_max(s: int, ctx: PrecisionContext) -> int:
    return math.ceil((1 + (ctx.target_digits + 5) * math.log(10) / math.log(ctx.cutoff)) / max(s, 1))


def _term_bound(x: int, M: int, ctx: PrecisionContext):
    # |log L(M, x, psi)| <= 2 M^(1-x)/(x-1)
    return 2 * ctx.mp.mpf(M) ** (1 - x) / (x - 1)


def prime_l_incomplete(M: int, chi: Character, s: int, ctx: PrecisionContext):
    """S(M, s, chi) = sum_{p > M} chi(p) p^-s by Moebius inversion of log L(M, st, chi^t)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1 and chi.is_principal:
        raise PoleError("S(s, chi_1) diverges at s = 1")

    def compute():
        mp = ctx.mp
        total = mp.mpc(0)
        t_cap = _t_max(s, ctx)
        t = 1
        while True:
            x = s * t
            if t > t_cap and x >= 2 and _term_bound(x, M, ctx) < ctx.tail_tol:
                break
            mu = mobius(t)
            if mu != 0:
                log_lm = log_l_incomplete(char_power(chi, t), x, ctx, M)
                if abs(mp.exp(log_lm) - 1) >= 0.5:
                    raise BranchError(f"|L(M, {x}, chi^{t}) - 1| >= 1/2; raise the cutoff")
                total += mu * log_lm / t
            t += 1
        return total

    return ctx.memo(("S_M", chi.modulus, chi.index, s, M), compute)


def _finite_prime_sum(chi: Character, s: int, M: int, ctx: PrecisionContext):
    mp = ctx.mp
    m = chi.modulus
    if M == ctx.cutoff:
        sums = class_power_sums(m, s, ctx)
    else:
        sums = [mp.zero] * m
        for p in primes_up_to(M):
            sums[int(p) % m] += mp.mpf(int(p)) ** (-s)
    total = mp.mpc(0)
    for n in range(m):
        if chi.values[n] is not None:
            total += root_of_unity(chi.values[n], chi.order, ctx) * sums[n]
    return total


def prime_l_series(chi: Character, s: int, ctx: PrecisionContext):
    """S(s, chi) = sum over all primes of chi(p) p^-s."""
    M = ctx.cutoff

    def compute():
        return _finite_prime_sum(chi, s, M, ctx) + prime_l_incomplete(M, chi, s, ctx)

    return ctx.memo(("S", chi.modulus, chi.index, s), compute)


def _trench_primes(m: int, n: int) -> list[int]:
    # primes dividing m that sit in class n; at most one
    return [p for p, _ in factorize(m) if p % m == n % m]


def _invert(m: int, n: int, values, ctx: PrecisionContext):
    mp = ctx.mp
    phi = totient(m)
    total = mp.mpc(0)
    for chi, val in zip(character_table(m), values):
        k = chi(n)
        if k is None:
            continue
        total += root_of_unity(-k, phi, ctx) * val
    total /= phi
    if abs(total.imag) > mp.mpf(10) ** (-(ctx.target_digits - 3)):
        raise ImaginaryResidueError(f"P_{{{m},{n}}} has imaginary part {mp.nstr(total.imag, 5)}")
    return total.real


def _check_class(m: int, n: int, s: int):
    if m < 1 or not 1 <= n <= m:
        raise ValueError(f"invalid residue class {n} mod {m}")
    if s < 2:
        raise ValueError("P_{m,n}(s) needs s >= 2")


def p_mod(m: int, n: int, s: int, ctx: PrecisionContext):
    """P_{m,n}(s) = sum over primes p = n (mod m) of p^-s."""
    _check_class(m, n, s)

    def compute():
        mp = ctx.mp
        value = _invert(m, n, [prime_l_series(chi, s, ctx) for chi in character_table(m)], ctx)
        for p in _trench_primes(m, n):
            value += mp.mpf(p) ** (-s)
        return value

    return ctx.memo(("P", m, n, s), compute)


def p_mod_incomplete(m: int, n: int, M: int, s: int, ctx: PrecisionContext):
    """P_{m,n}(M, s): the same sum restricted to p > M."""
    _check_class(m, n, s)

    def compute():
        mp = ctx.mp
        value = _invert(m, n, [prime_l_incomplete(M, chi, s, ctx) for chi in character_table(m)], ctx)
        for p in _trench_primes(m, n):
            if p > M:
                value += mp.mpf(p) ** (-s)
        return value

    return ctx.memo(("P_M", m, n, M, s), compute)


def prime_zeta(s: int, ctx: PrecisionContext):
    """P(s) = sum over all primes of p^-s, s >= 2."""
    if s < 2:
        raise ValueError("prime_zeta needs s >= 2")
    return prime_l_series(character(2, 1), s, ctx).real + ctx.mp.mpf(2) ** (-s)
