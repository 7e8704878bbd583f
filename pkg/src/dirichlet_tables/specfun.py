"""Arbitrary-precision special functions.

Everything here runs inside a :class:`PrecisionContext`, which owns an
isolated mpmath context (so callers never touch ``mpmath.mp``) together with
the memo tables of the higher-level modules.

Hurwitz zeta and its s-derivative use Euler-Maclaurin summation; the digamma
function uses upward recurrence followed by its asymptotic series.  Bernoulli
numbers are exact rationals from the defining recurrence.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Hashable

from mpmath.ctx_mp import MPContext

# every residue class up to this modulus must have its small primes summed directly
MAX_MODULUS = 22

_MAX_EM_RETRIES = 8


class PrecisionError(ArithmeticError):
    """Raised when a series cannot reach the requested tolerance."""


class PrecisionContext:
    """Working precision, prime cutoff and per-context memo tables.

    Parameters
    ----------
    target_digits:
        Decimal digits the caller wants to be correct.
    guard_digits:
        Extra working digits; must be at least 10.
    cutoff:
        Prime split point ``M``.  Primes ``p <= M`` are handled by direct
        sums/products, the remainder through zeta-type series.
    """

    def __init__(self, target_digits: int = 50, guard_digits: int = 15, cutoff: int = 100_000):
        if target_digits < 1:
            raise ValueError("target_digits must be positive")
        if guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")
        if cutoff < 2 * MAX_MODULUS:
            raise ValueError(f"cutoff must be at least {2 * MAX_MODULUS}")
        self.target_digits = int(target_digits)
        self.guard_digits = int(guard_digits)
        self.cutoff = int(cutoff)
        self.mp = MPContext()
        self.mp.dps = self.working_digits
        self.tail_tol = self.mp.mpf(10) ** (-(self.target_digits + self.guard_digits / 2))
        self._cache: dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def working_bits(self) -> int:
        return self.mp.prec

    def memo(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        # compute-if-absent; a racing duplicate computes the identical value
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def widened(self, extra_digits: int) -> "PrecisionContext":
        """A context with the same cutoff and ``extra_digits`` more target digits."""
        if extra_digits <= 0:
            return self
        return self.memo(("widened", extra_digits), lambda: PrecisionContext(
            self.target_digits + extra_digits, self.guard_digits, self.cutoff))

    def __repr__(self) -> str:
        return (f"PrecisionContext(target_digits={self.target_digits}, "
                f"guard_digits={self.guard_digits}, cutoff={self.cutoff})")


def mobius(n: int) -> int:
    """Moebius function by trial division."""
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


_bernoulli_table: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > 1 and k % 2 == 1:
        return Fraction(0)
    with _bernoulli_lock:
        table = _bernoulli_table
        # sum_{j=0}^{n} C(n+1, j) B_j = 0
        for n in range(len(table), k + 1):
            acc = Fraction(0)
            for j in range(n):
                if j > 1 and j % 2 == 1:
                    continue
                acc += math.comb(n + 1, j) * table[j]
            table.append(-acc / (n + 1))
        return table[k]


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n as an exact rational (H_0 = 0)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_rational(a) -> Fraction:
    if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
        raise TypeError("a must be an int or Fraction (rational n/m)")
    a = Fraction(a)
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    return a


def _em_terms(s, a: Fraction, ctx: PrecisionContext, derivative: bool):
    """Euler-Maclaurin evaluation of zeta(s, a) or its s-derivative.

    Direct terms for k < N, then integral, half and Bernoulli corrections.
    N doubles whenever the Bernoulli tail starts growing before the
    tolerance is met.
    """
    mp = ctx.mp
    if s <= 1:
        raise ValueError("Hurwitz zeta requires s > 1")
    # integer exponents take mpmath's fast integer-power path
    s = int(s) if s == int(s) else mp.mpf(s)
    av = mp.mpf(a.numerator) / a.denominator
    tol = ctx.tail_tol / 1000
    n_direct = max(ctx.working_digits, int(math.ceil(s)) + 10)
    for _ in range(_MAX_EM_RETRIES):
        total = mp.zero
        for k in range(n_direct):
            x = k + av
            term = x ** (-s)
            total += -mp.log(x) * term if derivative else term
        x = n_direct + av
        logx = mp.log(x)
        xs = x ** (-s)
        if derivative:
            total += -logx * xs * x / (s - 1) - xs * x / (s - 1) ** 2 - logx * xs / 2
        else:
            total += xs * x / (s - 1) + xs / 2
        # rising factorial s(s+1)...(s+2j-2), and sum of reciprocals of its factors
        rising = s
        recip = mp.one / s
        power = xs / x  # x^(-s-1)
        x2 = x * x
        prev = None
        converged = False
        for j in range(1, 4 * ctx.working_digits + 200):
            b = bernoulli(2 * j)
            coeff = mp.mpf(b.numerator) / (b.denominator * math.factorial(2 * j))
            if derivative:
                term = coeff * rising * power * (recip - logx)
            else:
                term = coeff * rising * power
            total += term
            size = abs(term)
            if size < tol:
                converged = True
                break
            if prev is not None and size > prev:
                break
            prev = size
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            recip += mp.one / (s + 2 * j - 1) + mp.one / (s + 2 * j)
            power /= x2
        if converged:
            return total
        n_direct *= 2
    raise PrecisionError(f"Euler-Maclaurin did not converge for s={s}, a={a}")


def hurwitz_zeta(s, a, ctx: PrecisionContext):
    """zeta(s, a) = sum_{k>=0} (k + a)^(-s) for real s > 1 and rational a in (0, 1]."""
    a = _as_rational(a)
    key = ("hurwitz", str(s), a)
    return ctx.memo(key, lambda: _em_terms(s, a, ctx, derivative=False))


def hurwitz_zeta_ds(s, a, ctx: PrecisionContext):
    """Partial derivative of zeta(s, a) with respect to s."""
    a = _as_rational(a)
    key = ("hurwitz_ds", str(s), a)
    return ctx.memo(key, lambda: _em_terms(s, a, ctx, derivative=True))


def digamma(a, ctx: PrecisionContext):
    """psi(a) for rational a in (0, 1]."""
    a = _as_rational(a)

    def compute():
        mp = ctx.mp
        av = mp.mpf(a.numerator) / a.denominator
        shift = ctx.working_digits
        acc = mp.zero
        for k in range(shift):
            acc -= 1 / (av + k)
        x = av + shift
        total = mp.log(x) - 1 / (2 * x)
        x2inv = 1 / (x * x)
        power = x2inv
        tol = ctx.tail_tol / 1000
        for j in range(1, 4 * ctx.working_digits):
            b = bernoulli(2 * j)
            term = mp.mpf(b.numerator) / (b.denominator * 2 * j) * power
            total -= term
            if abs(term) < tol:
                return total + acc
            power *= x2inv
        raise PrecisionError("digamma asymptotic series did not converge")

    return ctx.memo(("digamma", a), compute)


def riemann_zeta(j: int, ctx: PrecisionContext):
    if j < 2:
        raise ValueError("riemann_zeta needs j >= 2")
    return hurwitz_zeta(j, 1, ctx)


def riemann_zeta_ds(j: int, ctx: PrecisionContext):
    if j < 2:
        raise ValueError("riemann_zeta_ds needs j >= 2")
    return hurwitz_zeta_ds(j, 1, ctx)
