"""Dirichlet L-series, incomplete Euler products and first derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import Character, root_of_unity
from .primes import (DIRECT_LIMIT, class_power_sums, direct_primes, power_sum_bound,
                     primes_up_to, series_lower_bound)
from .specfun import (PrecisionContext, PrecisionError, digamma, harmonic, hurwitz_zeta,
                      hurwitz_zeta_ds, riemann_zeta, riemann_zeta_ds)

M_DIRECT = 40


class PoleError(ValueError):
    """L(s, chi) requested at its pole s = 1 with a principal character."""


def _key(s):
    return s if isinstance(s, int) else str(s)


def _grouped(chi: Character, ctx: PrecisionContext, term) -> object:
    """sum_n chi(n) term(n) for n = 1..m, summing real terms per root first."""
    mp = ctx.mp
    buckets: dict[int, object] = {}
    for n in range(1, chi.modulus + 1):
        k = chi(n)
        if k is None:
            continue
        buckets[k] = buckets.get(k, mp.zero) + term(n)
    total = mp.mpc(0)
    for k in sorted(buckets):
        total += root_of_unity(k, chi.order, ctx) * buckets[k]
    return total


def l_value(chi: Character, s, ctx: PrecisionContext):
    """L(s, chi).  s = 1 is allowed for non-principal characters only.

    Real non-integer s > 1 is accepted as well (used for finite differences).
    """
    m = chi.modulus

    def compute():
        mp = ctx.mp
        if s == 1:
            if chi.is_principal:
                raise PoleError("L(s, chi_1) has a pole at s = 1")
            # pole parts of zeta(s, n/m) cancel because sum chi(n) = 0
            return -_grouped(chi, ctx, lambda n: digamma(Fraction(n, m), ctx)) / m
        if s < 1:
            raise ValueError("s must be >= 1")
        sv = s if isinstance(s, int) else mp.mpf(s)
        return _grouped(chi, ctx, lambda n: hurwitz_zeta(s, Fraction(n, m), ctx)) / mp.mpf(m) ** sv

    return ctx.memo(("L", m, chi.index, _key(s)), compute)


def _direct_log_product(values, order: int, s: int, primes, ctx: PrecisionContext):
    """log prod_p (1 - chi(p) p^-s) over the given primes, principal branch of the product."""
    mp = ctx.mp
    m = len(values)
    prod = mp.mpc(1)
    for p in primes:
        k = values[p % m]
        if k is None:
            continue
        prod *= 1 - root_of_unity(k, order, ctx) * mp.mpf(p) ** (-s)
    return mp.log(prod)


def _series_log_product(chi: Character, s: int, ctx: PrecisionContext):
    """sum over DIRECT_LIMIT <= p <= M of log(1 - chi(p) p^-s), via per-class power sums."""
    mp = ctx.mp
    m, order = chi.modulus, chi.order
    lower = series_lower_bound(ctx)
    total = mp.mpc(0)
    tol = ctx.tail_tol / 1000
    k = 1
    while True:
        x = k * s
        if x >= 2 and power_sum_bound(x, ctx) / k < tol:
            break
        sums = class_power_sums(m, x, ctx, lower)
        acc: dict[int, object] = {}
        for n in range(m):
            v = chi.values[n]
            if v is None:
                continue
            e = v * k % order
            acc[e] = acc.get(e, mp.zero) + sums[n]
        for e in sorted(acc):
            total -= root_of_unity(e, order, ctx) * acc[e] / k
        k += 1
    return total


def _reduce_branch(z, ctx: PrecisionContext):
    mp = ctx.mp
    twopi = 2 * mp.pi
    im = z.imag - twopi * mp.nint(z.imag / twopi)
    return mp.mpc(z.real, im)


def log_l_incomplete(chi: Character, s: int, ctx: PrecisionContext, cutoff: int | None = None):
    """Principal logarithm of L(M, s, chi) = prod_{p > M} (1 - chi(p) p^-s)^-1."""
    M = ctx.cutoff if cutoff is None else cutoff

    def compute():
        mp = ctx.mp
        if M < 2:
            return mp.log(mp.mpc(l_value(chi, s, ctx)))
        total = mp.log(mp.mpc(l_value(chi, s, ctx)))
        if M == ctx.cutoff:
            total += _direct_log_product(chi.values, chi.order, s, direct_primes(ctx), ctx)
            if M >= DIRECT_LIMIT:
                total += _series_log_product(chi, s, ctx)
        else:
            total += _direct_log_product(chi.values, chi.order, s,
                                         [int(p) for p in primes_up_to(M)], ctx)
        return _reduce_branch(total, ctx)

    return ctx.memo(("logLM", chi.modulus, chi.index, s, M), compute)


def l_incomplete(M: int, chi: Character, s: int, ctx: PrecisionContext):
    """L(M, s, chi) = L(s, chi) prod_{p <= M} (1 - chi(p) p^-s)."""
    return ctx.mp.exp(log_l_incomplete(chi, s, ctx, M))


def l_deriv(chi: Character, s, ctx: PrecisionContext):
    """L'(s, chi) for s > 1 from Hurwitz zeta values and their s-derivatives."""
    if s <= 1:
        raise ValueError("l_deriv needs s > 1; use l_deriv_at_1 for s = 1")
    m = chi.modulus

    def compute():
        mp = ctx.mp
        sv = s if isinstance(s, int) else mp.mpf(s)
        a = _grouped(chi, ctx, lambda n: hurwitz_zeta(s, Fraction(n, m), ctx))
        b = _grouped(chi, ctx, lambda n: hurwitz_zeta_ds(s, Fraction(n, m), ctx))
        return (-mp.log(m) * a + b) / mp.mpf(m) ** sv

    return ctx.memo(("Lprime", m, chi.index, _key(s)), compute)


@dataclass(frozen=True)
class TailCoefficients:
    """Exact alpha_j, beta_j of the k-block expansion of L'(1, chi).

    ``beta[j]`` is a tuple c with beta_j = sum_e c[e] u^e, e < half, where
    u = exp(2 pi i/phi(m)) and u^(phi/2) = -1 has been used to fold the upper
    half of the exponents.  alpha_j = -H_{j-1} beta_j.
    """

    modulus: int
    order: int
    beta: dict[int, tuple[int, ...]]

    def alpha_factor(self, j: int) -> Fraction:
        return -harmonic(j - 1)

    def is_zero(self, j: int) -> bool:
        return not any(self.beta[j])


def tail_coefficients(chi: Character, j_max: int) -> TailCoefficients:
    if chi.is_principal:
        raise ValueError("tail coefficients need a non-principal character")
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    m, order = chi.modulus, chi.order
    half = order // 2 if order % 2 == 0 else order
    h = (m - 1) // 2
    beta: dict[int, tuple[int, ...]] = {}
    for j in range(2, j_max + 1):
        c = [0] * half
        for n in range(-h, h + 1):
            k = chi(n)
            if k is None:
                continue
            w = (-n) ** (j - 1)
            if k >= half:
                k -= half
                w = -w
            c[k] += w
        beta[j] = tuple(c)
    return TailCoefficients(m, order, beta)


def _cyclo_value(coeffs, order: int, ctx: PrecisionContext):
    mp = ctx.mp
    total = mp.mpc(0)
    for e, c in enumerate(coeffs):
        if c:
            total += c * root_of_unity(e, order, ctx)
    return total


def l_deriv_at_1(chi: Character, ctx: PrecisionContext, m_direct: int = M_DIRECT):
    """L'(1, chi) for non-principal chi by tail-accelerated block expansion.

    Terms n <= m_direct*m + (m-1)//2 are summed directly; the remaining
    blocks k > m_direct are expanded around km and summed with zeta(j),
    zeta'(j).
    """
    if chi.is_principal:
        raise PoleError("L'(1, chi_1) does not exist")
    m = chi.modulus

    def compute():
        mp = ctx.mp
        h = (m - 1) // 2
        last = m_direct * m + h
        buckets: dict[int, object] = {}
        for n in range(2, last + 1):
            k = chi(n)
            if k is None:
                continue
            buckets[k] = buckets.get(k, mp.zero) + mp.log(n) / n
        total = mp.mpc(0)
        for k in sorted(buckets):
            total -= root_of_unity(k, chi.order, ctx) * buckets[k]

        tol = ctx.tail_tol / 1000
        logm = mp.log(m)
        big = m_direct * m
        log_big = mp.log(big)
        logs_k = [mp.log(k * m) for k in range(1, m_direct + 1)]
        j_cap = 20 * ctx.working_digits
        coeffs = tail_coefficients(chi, 2)
        j = 2
        while True:
            if j > j_cap:
                raise PrecisionError("L'(1, chi) tail did not converge")
            coeffs = coeffs if j in coeffs.beta else tail_coefficients(chi, max(j, 2 * j))
            if not coeffs.is_zero(j):
                beta = _cyclo_value(coeffs.beta[j], chi.order, ctx)
                hj = coeffs.alpha_factor(j)
                alpha = beta * (mp.mpf(hj.numerator) / hj.denominator)
                bound = (abs(alpha) + abs(beta) * (log_big + mp.one / (j - 1))) \
                    * mp.mpf(big) ** (1 - j) / (m * (j - 1))
                if bound < tol:
                    break
                mj = mp.mpf(m) ** j
                z = riemann_zeta(j, ctx)
                zd = riemann_zeta_ds(j, ctx)
                pw = [mp.mpf(k * m) ** (-j) for k in range(1, m_direct + 1)]
                head_a = mp.fsum(pw)
                head_b = mp.fsum(p * lg for p, lg in zip(pw, logs_k))
                total -= alpha * (z / mj - head_a) + beta * ((z * logm - zd) / mj - head_b)
            j += 1
        return total

    return ctx.memo(("Lprime1", m, chi.index, m_direct), compute)
