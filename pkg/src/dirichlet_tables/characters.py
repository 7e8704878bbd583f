"""Dirichlet character groups with exact root-of-unity values.

A value of a character mod m is stored as an exponent k (mod phi(m)) meaning
exp(2 pi i k / phi(m)), or ``None`` for zero.  Rows are numbered the way the
reference tables number them:

* odd prime power q: chi_j(g^a) = exp(2 pi i j a / phi(q)), j = 0 .. phi(q)-1,
  with g the smallest primitive root of q;
* 4: the sign character on -1;
* 2^e, e >= 3: n = (-1)^a 5^b, chi_{c,d}(n) = (-1)^(a c) exp(-2 pi i b d / 2^(e-2)),
  with c the outer and d the inner index;
* composite m: nested loops over the prime-power factors in ascending order
  of the prime, the largest prime varying fastest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .specfun import PrecisionContext, mobius

RootValue = Optional[int]  # exponent mod phi(m), or None for zero


def factorize(m: int) -> list[tuple[int, int]]:
    """Ascending prime factorization of m by trial division."""
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def totient(m: int) -> int:
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def primitive_root(q: int) -> int:
    """Smallest primitive root of an odd prime power q."""
    phi = totient(q)
    divisors = [p for p, _ in factorize(phi)]
    for g in range(2, q):
        if math.gcd(g, q) == 1 and all(pow(g, phi // p, q) != 1 for p in divisors):
            return g
    raise ValueError(f"{q} has no primitive root")


@dataclass(frozen=True)
class Character:
    """One Dirichlet character chi_r mod m.

    ``values[n % m]`` is the exponent of chi(n); index 0 holds chi(m).
    """

    modulus: int
    index: int
    values: tuple[RootValue, ...]
    conductor: int

    @property
    def order(self) -> int:
        """phi(m): the exponents live in Z/order."""
        return totient(self.modulus)

    def __call__(self, n: int) -> RootValue:
        return self.values[n % self.modulus]

    @property
    def is_principal(self) -> bool:
        return all(v in (None, 0) for v in self.values)

    @property
    def is_real(self) -> bool:
        half = self.order / 2
        return all(v is None or v == 0 or v == half for v in self.values)

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        v = self(self.modulus - 1)
        if self.modulus <= 2 or v == 0:
            return 1
        return -1

    def conjugate(self) -> "Character":
        return _row_with_values(self.modulus, _neg(self.values, self.order))

    def power(self, t: int) -> "Character":
        return char_power(self, t)


def _neg(values, order):
    return tuple(None if v is None else (-v) % order for v in values)


def _local_characters(p: int, e: int) -> list[list[RootValue]]:
    """Characters mod p^e as exponent lists over residues 0..q-1, in units of 1/phi(q)."""
    q = p ** e
    phi = totient(q)
    rows: list[list[RootValue]] = []
    if p == 2 and e == 1:
        return [[None, 0]]
    if p == 2:
        # n = (-1)^a 5^b
        log_of: dict[int, tuple[int, int]] = {}
        half = q // 4
        for a in range(2):
            x = 1 if a == 0 else q - 1
            for b in range(half):
                log_of[x] = (a, b)
                x = x * 5 % q
        for c in range(2):
            for d in range(half):
                row: list[RootValue] = [None] * q
                for n, (a, b) in log_of.items():
                    # (-1)^(ac) -> phi/2 * ac ; exp(-2 pi i b d / half) -> -2 b d
                    row[n] = (phi // 2 * a * c - 2 * b * d) % phi
                rows.append(row)
        return rows
    g = primitive_root(q)
    log_of = {}
    x = 1
    for a in range(phi):
        log_of[x] = a
        x = x * g % q
    for j in range(phi):
        row = [None] * q
        for n, a in log_of.items():
            row[n] = j * a % phi
        rows.append(row)
    return rows


def _conductor(m: int, values: tuple[RootValue, ...]) -> int:
    units = [n for n in range(1, m + 1) if math.gcd(n, m) == 1]
    for f in sorted(d for d in range(1, m + 1) if m % d == 0):
        seen: dict[int, RootValue] = {}
        ok = True
        for n in units:
            v = values[n % m]
            prev = seen.setdefault(n % f, v)
            if prev != v:
                ok = False
                break
        if ok:
            return f
    return m


@lru_cache(maxsize=None)
def _table(m: int) -> tuple[Character, ...]:
    phi = totient(m)
    if m == 1:
        return (Character(1, 1, (0,), 1),)
    factors = [(p ** e, _local_characters(p, e)) for p, e in factorize(m)]
    combos: list[list[tuple[int, list[RootValue]]]] = [[]]
    for q, rows in factors:
        combos = [c + [(q, row)] for c in combos for row in rows]
    table = []
    for r, combo in enumerate(combos, start=1):
        values: list[RootValue] = []
        for n in range(m):
            if math.gcd(n, m) != 1:
                values.append(None)
                continue
            k = 0
            for q, row in combo:
                k += row[n % q] * (phi // totient(q))
            values.append(k % phi)
        vals = tuple(values)
        table.append(Character(m, r, vals, _conductor(m, vals)))
    return tuple(table)


def character_table(m: int) -> list[Character]:
    """All phi(m) characters mod m, principal first.

    ``m = 1`` yields the single all-ones character.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    return list(_table(m))


def character(m: int, r: int) -> Character:
    table = _table(m)
    if not 1 <= r <= len(table):
        raise ValueError(f"no character r={r} mod {m}")
    return table[r - 1]


def _row_with_values(m: int, values) -> Character:
    for chi in _table(m):
        if chi.values == values:
            return chi
    raise AssertionError("character group is not closed")


def conductor(chi: Character) -> int:
    return chi.conductor


def char_power(chi: Character, t: int) -> Character:
    """The character n -> chi(n)^t, as a row of the same table."""
    if t < 1:
        raise ValueError("t must be positive")
    order = chi.order
    return _row_with_values(chi.modulus, tuple(None if v is None else v * t % order for v in chi.values))


def dirichlet_inverse_coeff(chi: Character, n: int) -> tuple[int, int]:
    """mu(n) chi(n) as ``(c, k)`` meaning c * exp(2 pi i k/phi(m)); c = 0 encodes zero."""
    if n < 1:
        raise ValueError("n must be positive")
    v = chi(n)
    mu = mobius(n)
    if v is None or mu == 0:
        return 0, 0
    return mu, v


def root_of_unity(k: int, order: int, ctx: PrecisionContext):
    """exp(2 pi i k / order) at working precision, exact on the axes."""
    key = ("root", k % order, order)

    def compute():
        mp = ctx.mp
        kk = k % order
        if 4 * kk % order == 0:
            quarter = 4 * kk // order
            return [mp.mpc(1, 0), mp.mpc(0, 1), mp.mpc(-1, 0), mp.mpc(0, -1)][quarter]
        c, s = mp.cospi(mp.mpf(2 * kk) / order), mp.sinpi(mp.mpf(2 * kk) / order)
        return mp.mpc(c, s)

    return ctx.memo(key, compute)


def to_complex(value: RootValue, order: int, ctx: PrecisionContext):
    if value is None:
        return ctx.mp.mpc(0)
    return root_of_unity(value, order, ctx)


def value_symbol(value: RootValue, order: int) -> str:
    """Tabular shorthand: 0, 1, -1, i, -i, uJ or ubJ (conjugate)."""
    if value is None:
        return "0"
    k = value % order
    if k == 0:
        return "1"
    if 2 * k == order:
        return "-1"
    if 4 * k == order:
        return "i"
    if 4 * k == 3 * order:
        return "-i"
    if 2 * k < order:
        return f"u{k}"
    return f"ub{order - k}"
