"""Prime generation, residue-class filtering and per-class prime power sums."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .specfun import PrecisionContext

SEGMENT = 1 << 18

# primes below this bound get per-prime treatment inside finite Euler products;
# larger ones go through the per-class power sums
DIRECT_LIMIT = 1000


@dataclass(frozen=True)
class ResidueClass:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or not 1 <= self.n <= self.m:
            raise ValueError(f"invalid residue class {self.n} mod {self.m}")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.n, self.m) == 1


def _small_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags)


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, via a segmented odd-only sieve."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    base = _small_sieve(math.isqrt(limit) + 1)[1:]  # odd base primes
    chunks = [np.array([2], dtype=np.int64)]
    low = 3
    while low <= limit:
        high = min(low + 2 * SEGMENT, limit + 1)  # odd numbers in [low, high)
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, (low + p - 1) // p * p)
            if start % 2 == 0:
                start += p
            mask[(start - low) // 2::p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high if high % 2 == 1 else high + 1
    return np.concatenate(chunks)


def primes_in_class(rc: ResidueClass, limit: int) -> np.ndarray:
    ps = primes_up_to(limit)
    return ps[ps % rc.m == rc.n % rc.m]


def cutoff_primes(ctx: PrecisionContext) -> list[int]:
    """Primes p <= M for the context's cutoff."""
    return ctx.memo(("primes",), lambda: [int(p) for p in primes_up_to(ctx.cutoff)])


def fixed_point_bits(ctx: PrecisionContext) -> int:
    return ctx.working_bits + 64


def _fixed_powers(x: int, ctx: PrecisionContext) -> list[int]:
    # floor(2^W / p^x); each entry is off by less than one unit
    def compute():
        one = 1 << fixed_point_bits(ctx)
        return [one // p ** x for p in cutoff_primes(ctx)]

    return ctx.memo(("fixed_powers", x), compute)


def _class_indices(m: int, lower: int, ctx: PrecisionContext) -> list[list[int]]:
    def compute():
        ps = cutoff_primes(ctx)
        start = bisect.bisect_left(ps, lower)
        buckets: list[list[int]] = [[] for _ in range(m)]
        for i in range(start, len(ps)):
            buckets[ps[i] % m].append(i)
        return buckets

    return ctx.memo(("class_indices", m, lower), compute)


def class_power_sums(m: int, x: int, ctx: PrecisionContext, lower: int = 2) -> list:
    """Per-residue sums of p^(-x) over primes lower <= p <= M.

    Entry n of the result is the sum over p = n (mod m).  The sums are
    accumulated exactly in fixed point, so they are reproducible bit for bit.
    """
    if x < 1:
        raise ValueError("x must be positive")

    def compute():
        powers = _fixed_powers(x, ctx)
        bits = fixed_point_bits(ctx)
        mp = ctx.mp
        return [mp.ldexp(mp.mpf(sum(powers[i] for i in idx)), -bits)
                for idx in _class_indices(m, lower, ctx)]

    return ctx.memo(("class_power_sums", m, x, lower), compute)


def direct_primes(ctx: PrecisionContext) -> list[int]:
    """Primes below the direct-treatment bound (and <= M)."""
    ps = cutoff_primes(ctx)
    return ps[:bisect.bisect_left(ps, DIRECT_LIMIT)]


def series_lower_bound(ctx: PrecisionContext) -> int:
    """Smallest prime handled through power sums rather than per prime."""
    return min(DIRECT_LIMIT, ctx.cutoff + 1)


def power_sum_bound(x: int, ctx: PrecisionContext):
    """Upper bound on sum_{p >= lower} p^(-x) for the series part, x >= 2."""
    b = series_lower_bound(ctx)
    return 2 * ctx.mp.mpf(b - 1) ** (1 - x) / (x - 1)
