"""Residue-class Euler-product constants.

* Artin A_{m,n}^{(s)}: prod (1 - 1/(p^s (p-1)))
* quadratic class Q_{m,n}^{(s)}: prod (1 - 1/(p^s (p+1)))
* Feller-Tornier F_{m,n}^{(s)}: prod (1 - 2 p^-s)
* Hardy-Littlewood C_{m,n}^{(s)}: prod over p > s of p^(s-1) (p-s)/(p-1)^s

each over primes p = n (mod m).  Star rows multiply all classes mod m
together and so recover the class-free constant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .eulerprod import class_product
from .specfun import PrecisionContext, binomial

KINDS = ("A", "Q", "F", "C")
S_MIN = {"A": 1, "Q": 1, "F": 2, "C": 2}


@lru_cache(maxsize=None)
def _artin_coeff(t: int, s: int, alternating: bool) -> Fraction:
    # -sum_j (1/j) C(t-sj-1, j-1) [(-1)^(t-(s+1)j)], exact
    total = Fraction(0)
    for j in range(1, t // (s + 1) + 1):
        c = Fraction(binomial(t - s * j - 1, j - 1), j)
        if alternating and (t - (s + 1) * j) % 2:
            c = -c
        total += c
    return -total


def _validate(kind: str, m: int, n: int, s: int):
    if kind not in KINDS:
        raise ValueError(f"unknown constant kind {kind!r}")
    if m < 1 or not 1 <= n <= m:
        raise ValueError(f"invalid residue class {n} mod {m}")
    if s < S_MIN[kind]:
        raise ValueError(f"{kind} constants need s >= {S_MIN[kind]}")


def _constant(kind: str, m: int, n: int, s: int, ctx: PrecisionContext):
    _validate(kind, m, n, s)
    mp = ctx.mp
    if kind in ("A", "Q"):
        sign = -1 if kind == "A" else 1
        return class_product(
            m, n, ctx,
            factor=lambda p: 1 - 1 / (mp.mpf(p) ** s * (p + sign)),
            coeff=lambda t: _artin_coeff(t, s, kind == "Q"),
            envelope=lambda t: 2.0 ** t,
            key=(kind, s),
        )
    if kind == "F":
        return class_product(
            m, n, ctx,
            factor=lambda p: 1 - 2 * mp.mpf(p) ** (-s),
            coeff=lambda t: Fraction(-2 ** (t // s), t // s) if t % s == 0 else Fraction(0),
            envelope=lambda t: 2.0 ** t,
            key=("F", s),
        )

    def c_factor(p):
        if p <= s:
            return mp.one
        return mp.mpf(p) ** (s - 1) * (p - s) / mp.mpf(p - 1) ** s

    return class_product(
        m, n, ctx,
        factor=c_factor,
        coeff=lambda t: Fraction(-(s ** t - s), t),
        envelope=lambda t: float(s) ** t,
        key=("C", s),
    )


def artin(m: int, n: int, s: int, ctx: PrecisionContext):
    """A_{m,n}^{(s)}, s >= 1."""
    return _constant("A", m, n, s, ctx)


def quadratic_class(m: int, n: int, s: int, ctx: PrecisionContext):
    """Q_{m,n}^{(s)}, s >= 1."""
    return _constant("Q", m, n, s, ctx)


def feller_tornier(m: int, n: int, s: int, ctx: PrecisionContext):
    """F_{m,n}^{(s)}, s >= 2."""
    return _constant("F", m, n, s, ctx)


def hardy_littlewood(m: int, n: int, s: int, ctx: PrecisionContext):
    """C_{m,n}^{(s)}, s >= 2; primes p <= s are left out of the product."""
    return _constant("C", m, n, s, ctx)


def constant(kind: str, m: int, n: int, s: int, ctx: PrecisionContext):
    return _constant(kind.upper(), m, n, s, ctx)


def star_row(kind: str, m: int, s: int, ctx: PrecisionContext):
    """Product of the constant over every class n = 1..m.

    Classes sharing a factor with m hold at most one prime, a divisor of m,
    and contribute that prime's single factor; the result does not depend
    on m.
    """
    kind = kind.upper()
    _validate(kind, m, 1, s)
    value = ctx.mp.one
    for n in range(1, m + 1):
        value *= _constant(kind, m, n, s, ctx)
    return value
