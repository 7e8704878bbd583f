"""Acceptance run: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest;
the criterion lines are printed even when pytest captures output.
"""

import math
import random
import sys
import time

import mpmath
import numpy as np
import pytest

from dirichlet_tables import characters
from dirichlet_tables.characters import character, character_table, totient, value_symbol
from dirichlet_tables.constants import constant, star_row
from dirichlet_tables.eulerprod import zeta_mod
from dirichlet_tables.golden import embedded_records
from dirichlet_tables.lseries import l_deriv, l_value
from dirichlet_tables.primes import primes_up_to
from dirichlet_tables.primezeta import p_mod, prime_l_series
from dirichlet_tables.specfun import PrecisionContext
from dirichlet_tables.tablegen import verify_goldens, verify_records


@pytest.fixture(scope="module")
def actx():
    return PrecisionContext()


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def _golden(kind, ctx, keep=lambda r: True, tol=48):
    recs = [r for r in embedded_records(kind) if keep(r)]
    rep = verify_records(recs, ctx, tol)
    worst = rep.worst()
    return rep, len(recs), (ctx.mp.nstr(worst.delta, 3) if worst else "n/a")


def test_criterion_01_character_tables(report):
    characters._table.cache_clear()
    start = time.perf_counter()
    recs = embedded_records("chars")
    bad = []
    for rec in recs:
        chi = character(rec.m, rec.label)
        got = tuple(value_symbol(chi(n), chi.order) for n in range(1, rec.m + 1))
        if got != rec.values or chi.conductor != rec.s:
            bad.append(rec.name)
    rows = sum(totient(m) for m in range(2, 23))
    elapsed = time.perf_counter() - start
    ok = not bad and len(recs) == rows and elapsed < 1.0
    report(1, ok, f"{len(recs)}/{rows} rows for m <= 22 exact, {elapsed:.2f}s, mismatches {bad[:3]}")


def test_criterion_02_l_goldens(report, actx):
    rep, n, worst = _golden("L", actx, lambda r: r.m <= 14)
    ms = {r.record.m for r in rep.results}
    ok = rep.passed and n >= 150 and ms == set(range(2, 15))
    report(2, ok, f"{n} L rows, every m in 2..14, worst |d| {worst} < 1e-48")


def test_criterion_03_closed_forms(report, actx):
    mp = actx.mp
    tol = mp.mpf(10) ** -48
    checks = {
        "L(2,chi1;2) = pi^2/8": (l_value(character(2, 1), 2, actx), mp.pi ** 2 / 8),
        "L(1,chi2;4) = pi/4": (l_value(character(4, 2), 1, actx), mp.pi / 4),
        "L(1,chi3;5) = 2 log((1+sqrt5)/2)/sqrt5":
            (l_value(character(5, 3), 1, actx), 2 * mp.log((1 + mp.sqrt(5)) / 2) / mp.sqrt(5)),
        # pi^2/9 belongs to the principal character mod 6
        "L(2,chi1;6) = pi^2/9": (l_value(character(6, 1), 2, actx), mp.pi ** 2 / 9),
        "L(1,chi2;6) = pi/(2 sqrt3)": (l_value(character(6, 2), 1, actx), mp.pi / (2 * mp.sqrt(3))),
        "L(3,chi2;6) = pi^3/(18 sqrt3)": (l_value(character(6, 2), 3, actx), mp.pi ** 3 / (18 * mp.sqrt(3))),
    }
    errs = {k: abs(a - b) for k, (a, b) in checks.items()}
    ok = all(e < tol for e in errs.values())
    worst = max(errs.values())
    report(3, ok, f"{len(checks)} closed forms, worst |d| {mp.nstr(worst, 3)} < 1e-48")


def test_criterion_04_derivatives(report, actx):
    rep, n, worst = _golden("Lprime", actx, lambda r: r.m <= 6)
    s1 = sum(1 for r in rep.results if r.record.s == 1)
    # finite differences at doubled precision for 10 random cells
    fine = PrecisionContext(target_digits=100)
    mp = fine.mp
    h = mp.mpf(10) ** -30
    rng = random.Random(20240611)
    fd_worst = mp.zero
    for _ in range(10):
        m = rng.randint(2, 22)
        chi = rng.choice(character_table(m))
        s = rng.randint(2, 10)
        fd = (l_value(chi, mp.mpf(s) + h, fine) - l_value(chi, mp.mpf(s) - h, fine)) / (2 * h)
        fd_worst = max(fd_worst, abs(l_deriv(chi, s, actx) - fd))
    ok = rep.passed and s1 > 0 and fd_worst < mp.mpf(10) ** -44
    report(4, ok, f"{n} L' rows (m <= 6, {s1} at s=1), worst |d| {worst}; "
                  f"finite differences worst {mp.nstr(fd_worst, 3)} < 1e-44")


def test_criterion_05_prime_l(report, actx):
    rep, n, worst = _golden("S", actx, lambda r: r.m <= 6)
    complex_s1 = [r for r in rep.results if r.record.m == 5 and r.record.s == 1
                  and actx.mp.mpf(r.record.im) != 0]
    # the listing leaves out r=4, the conjugate of r=2
    mp = actx.mp
    conj_gap = abs(prime_l_series(character(5, 4), 1, actx) - mp.conj(prime_l_series(character(5, 2), 1, actx)))
    ok = rep.passed and len(complex_s1) >= 1 and conj_gap < mp.mpf(10) ** -48
    report(5, ok, f"{n} S rows (m <= 6, {len(complex_s1)} complex s=1 row at m=5), worst |d| {worst}; "
                  f"conjugate row r=4 gap {mp.nstr(conj_gap, 3)}")


def test_criterion_06_prime_zeta_modulo(report, actx):
    mp = actx.mp
    tol = mp.mpf(10) ** -48
    rep, n, worst = _golden("P", actx, lambda r: r.m <= 10)
    oracle = mpmath.ctx_mp.MPContext()
    oracle.dps = 80
    sum_worst = mp.zero
    for m in range(2, 11):
        for s in range(2, 11):
            total = mp.fsum(p_mod(m, k, s, actx) for k in range(1, m + 1))
            sum_worst = max(sum_worst, abs(total - oracle.primezeta(s)))
    ref_worst = mp.zero
    for s in range(2, 11):
        P = lambda a, b: p_mod(a, b, s, actx)
        two = mp.mpf(2) ** -s
        for lhs, rhs in ((P(6, 1), P(3, 1)), (P(6, 5), P(3, 2) - two),
                         (P(8, 1) + P(8, 5), P(4, 1)), (P(8, 3) + P(8, 7), P(4, 3)),
                         (P(9, 1) + P(9, 4) + P(9, 7), P(3, 1)), (P(5, 2), P(10, 7) + two)):
            ref_worst = max(ref_worst, abs(lhs - rhs))
    ok = rep.passed and sum_worst < tol and ref_worst < tol
    report(6, ok, f"{n} P rows worst |d| {worst}; sum over classes vs P(s) {mp.nstr(sum_worst, 3)}; "
                  f"refinements {mp.nstr(ref_worst, 3)}")


def test_criterion_07_euler_modulo_products(report, actx):
    mp = actx.mp
    rep, n, worst = _golden("Zeta", actx, lambda r: r.m <= 14)
    oracle = mpmath.ctx_mp.MPContext()
    oracle.dps = 80
    prod_worst = mp.zero
    for m in range(3, 15):
        for s in range(2, 11):
            prod = mp.one
            for k in range(1, m + 1):
                if math.gcd(k, m) == 1:
                    prod *= zeta_mod(m, k, s, actx)
            for p, _ in characters.factorize(m):
                prod /= 1 - mp.mpf(p) ** -s
            prod_worst = max(prod_worst, abs(prod - oracle.zeta(s)))
    ok = rep.passed and prod_worst < mp.mpf(10) ** -47
    report(7, ok, f"{n} zeta_mn rows worst |d| {worst}; class product vs zeta(s) {mp.nstr(prod_worst, 3)} < 1e-47")


def test_criterion_08_constants(report, actx):
    mp = actx.mp
    tol = mp.mpf(10) ** -48
    parts, all_ok = [], True
    for kind in ("A", "Q", "F", "C"):
        rep, n, worst = _golden(kind, actx, lambda r: r.m <= 7)
        all_ok &= rep.passed
        parts.append(f"{kind} {n} rows worst {worst}")
    known = {("A", 1): "0.37395581361920228805472805434641641511162924860615",
             ("C", 2): "0.66016181584686957392781211001455577843262336028473",
             ("F", 2): "0.32263409893924467057953169254823706657095057966583"}
    star_worst = mp.zero
    for (kind, s), value in known.items():
        star_worst = max(star_worst, abs(star_row(kind, 3, s, actx) - mp.mpf(value)))
    spread = mp.zero
    for kind, s_range in (("A", range(1, 6)), ("Q", range(1, 6)), ("F", range(2, 6)), ("C", range(2, 7))):
        for s in s_range:
            rows = [star_row(kind, m, s, actx) for m in range(3, 8)]
            spread = max(spread, max(rows) - min(rows))
    ok = all_ok and star_worst < tol and spread < tol
    report(8, ok, "; ".join(parts) + f"; known stars {mp.nstr(star_worst, 3)}; "
                  f"star spread over m {mp.nstr(spread, 3)}")


def test_criterion_09_brute_force(report, actx):
    start = time.perf_counter()
    N = 10 ** 7
    ps_int = primes_up_to(N - 1)
    lnN = math.log(N)
    worst = 0.0
    for m, n in ((3, 1), (3, 2), (4, 1), (4, 3)):
        p = ps_int[ps_int % m == n].astype(np.float64)
        phi = totient(m)

        def tail(e):
            # sum_{p > N, p = n (m)} p^-e ~ E1((e-1) ln N)/phi(m)
            return float(mpmath.e1((e - 1) * lnN)) / phi

        cases = {
            "P": (float(p_mod(m, n, 2, actx)), math.fsum(p ** -2.0) + tail(2)),
            "zeta": (float(actx.mp.log(zeta_mod(m, n, 2, actx))),
                     -math.fsum(np.log1p(-p ** -2.0)) + tail(2)),
            "A": (float(actx.mp.log(constant("A", m, n, 2, actx))),
                  math.fsum(np.log1p(-1.0 / (p ** 2 * (p - 1)))) - tail(3)),
            # primes p <= s are left out of the Hardy-Littlewood product
            "C": (float(actx.mp.log(constant("C", m, n, 2, actx))),
                  math.fsum(np.log1p(-1.0 / (p[p > 2] - 1) ** 2)) - tail(2)),
        }
        for name, (acc, brute) in cases.items():
            # P relative; the products compared through their logarithms
            scale = abs(acc) if name == "P" else 1.0
            worst = max(worst, abs(acc - brute) / scale)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 60
    report(9, ok, f"P, zeta, A, C for 4 classes at s=2 vs sieve to 1e7 plus tail estimate: "
                  f"worst relative gap {worst:.2e} < 1e-8, {elapsed:.1f}s")


def test_criterion_10_determinism(report):
    first = verify_goldens(ctx=PrecisionContext()).render(PrecisionContext())
    second = verify_goldens(ctx=PrecisionContext()).render(PrecisionContext())
    lines = first.count("\n")
    ok = first == second and "failed: 0" in first
    report(10, ok, f"two full golden runs, {lines} report lines, byte-identical: {first == second}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
