from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from dirichlet_tables.specfun import (PrecisionContext, bernoulli, binomial, digamma, harmonic,
                                      hurwitz_zeta, hurwitz_zeta_ds, mobius, riemann_zeta,
                                      riemann_zeta_ds)

TOL = mpmath.mpf(10) ** -60


def _brute_mobius(n):
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    if any(n % (p * p) == 0 for p in primes):
        return 0
    return (-1) ** len(primes)


def test_context_defaults():
    c = PrecisionContext()
    assert (c.target_digits, c.guard_digits, c.cutoff) == (50, 15, 100_000)
    assert c.working_digits == 65
    assert c.tail_tol < c.mp.mpf(10) ** -57


@pytest.mark.parametrize("kwargs", [{"guard_digits": 9}, {"cutoff": 10}, {"target_digits": 0}])
def test_context_rejects(kwargs):
    with pytest.raises(ValueError):
        PrecisionContext(**kwargs)


def test_contexts_are_isolated():
    before = mpmath.mp.dps
    a = PrecisionContext(target_digits=20)
    b = PrecisionContext(target_digits=80)
    assert a.mp.dps == 35 and b.mp.dps == 95
    assert mpmath.mp.dps == before


def test_memo_computes_once(ctx):
    calls = []
    key = ("test-memo",)
    assert ctx.memo(key, lambda: calls.append(1) or 7) == 7
    assert ctx.memo(key, lambda: calls.append(1) or 8) == 7
    assert calls == [1]


@given(st.integers(1, 3000))
def test_mobius_matches_brute_force(n):
    assert mobius(n) == _brute_mobius(n)


def test_mobius_rejects_zero():
    with pytest.raises(ValueError):
        mobius(0)


@pytest.mark.parametrize("k", range(0, 40))
def test_bernoulli_matches_mpmath(k):
    assert bernoulli(k) == Fraction(*mpmath.bernfrac(k))


def test_bernoulli_small_values():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)


@given(st.integers(0, 60))
def test_harmonic_recurrence(n):
    assert harmonic(n + 1) - harmonic(n) == Fraction(1, n + 1)


def test_binomial_edges():
    assert binomial(5, -1) == 0 and binomial(3, 5) == 0 and binomial(10, 3) == 120


@pytest.mark.parametrize("s", [2, 3, 7, 15, 40])
@pytest.mark.parametrize("a", [Fraction(1), Fraction(1, 2), Fraction(2, 7), Fraction(13, 14), Fraction(1, 22)])
def test_hurwitz_against_mpmath(ctx, oracle_mp, s, a):
    ref = oracle_mp.zeta(s, oracle_mp.mpf(a.numerator) / a.denominator)
    got = hurwitz_zeta(s, a, ctx)
    assert abs(got - ref) < TOL * abs(ref)


@pytest.mark.parametrize("s", [2, 3, 10])
@pytest.mark.parametrize("a", [Fraction(1), Fraction(1, 3), Fraction(5, 8)])
def test_hurwitz_ds_against_mpmath(ctx, oracle_mp, s, a):
    ref = oracle_mp.zeta(s, oracle_mp.mpf(a.numerator) / a.denominator, derivative=1)
    assert abs(hurwitz_zeta_ds(s, a, ctx) - ref) < TOL * max(1, abs(ref))


def test_hurwitz_ds_finite_difference():
    # central difference at doubled precision
    fine = PrecisionContext(target_digits=110)
    h = fine.mp.mpf(10) ** -30
    a = Fraction(3, 7)
    diff = (hurwitz_zeta(fine.mp.mpf(3) + h, a, fine) - hurwitz_zeta(fine.mp.mpf(3) - h, a, fine)) / (2 * h)
    coarse = PrecisionContext()
    assert abs(hurwitz_zeta_ds(3, a, coarse) - diff) < mpmath.mpf(10) ** -55


def test_hurwitz_real_exponent(ctx, oracle_mp):
    s = ctx.mp.mpf("2.5")
    ref = oracle_mp.zeta(oracle_mp.mpf("2.5"), oracle_mp.mpf(1) / 4)
    assert abs(hurwitz_zeta(s, Fraction(1, 4), ctx) - ref) < TOL


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(2, 20))
def test_hurwitz_multiplication_theorem(q, s):
    # sum_{k=1}^{q} zeta(s, k/q) = q^s zeta(s)
    c = PrecisionContext(target_digits=30)
    total = sum(hurwitz_zeta(s, Fraction(k, q), c) for k in range(1, q + 1))
    ref = c.mp.mpf(q) ** s * riemann_zeta(s, c)
    assert abs(total - ref) < c.mp.mpf(10) ** -28 * ref


@pytest.mark.parametrize("bad", [0, Fraction(3, 2), -Fraction(1, 2)])
def test_hurwitz_rejects_a(ctx, bad):
    with pytest.raises(ValueError):
        hurwitz_zeta(2, bad, ctx)


def test_hurwitz_rejects_float_a(ctx):
    with pytest.raises(TypeError):
        hurwitz_zeta(2, 0.5, ctx)


def test_hurwitz_rejects_pole(ctx):
    with pytest.raises(ValueError):
        hurwitz_zeta(1, 1, ctx)


@pytest.mark.parametrize("a", [Fraction(1), Fraction(1, 2), Fraction(1, 9), Fraction(21, 22)])
def test_digamma_against_mpmath(ctx, oracle_mp, a):
    ref = oracle_mp.digamma(oracle_mp.mpf(a.numerator) / a.denominator)
    assert abs(digamma(a, ctx) - ref) < TOL * max(1, abs(ref))


def test_digamma_closed_forms(ctx):
    mp = ctx.mp
    assert abs(digamma(1, ctx) + mp.euler) < TOL
    assert abs(digamma(Fraction(1, 2), ctx) + mp.euler + 2 * mp.log(2)) < TOL


def test_riemann_zeta_values(ctx):
    mp = ctx.mp
    assert abs(riemann_zeta(2, ctx) - mp.pi ** 2 / 6) < TOL
    assert abs(riemann_zeta(4, ctx) - mp.pi ** 4 / 90) < TOL
    with pytest.raises(ValueError):
        riemann_zeta_ds(1, ctx)


def test_riemann_zeta_ds_value(ctx, oracle_mp):
    assert abs(riemann_zeta_ds(2, ctx) - oracle_mp.zeta(2, derivative=1)) < TOL
