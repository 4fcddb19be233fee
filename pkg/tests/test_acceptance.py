"""The eleven acceptance criteria, each at its stated tolerance.

Every test records a single PASS/FAIL line (shown in the terminal summary)
and then asserts, so a failure is both printed and reported.
"""

import time
from decimal import Decimal
from fractions import Fraction
from itertools import product
from math import factorial

from qglf.coefficients import (
    a_two_explicit,
    b_multi,
    b_two,
    b_two_hypergeometric,
    genus,
    genus0_count,
    growth_ratio,
    m_classical,
    m_q,
    p_g_polynomial,
    reflection_count,
)
from qglf.genfun import (
    a_table,
    expected_genus,
    expected_genus_from_table,
    fulman_series,
    hook_weight,
)
from qglf.glnq import group_order
from qglf.oracle import (
    brute_count_gl,
    brute_count_sn,
    colored_count,
    fixed_dim_census,
    genus_stats,
    sn_binomial_coefficients,
)
from qglf.qcalc import gl_order, qfact, qpoch_q
from qglf.qpoly import QRational

q = QRational.q()


def _finish(report, number, failures, detail):
    ok = not failures
    report(number, ok, detail if ok else f"{detail}; first failures: {failures[:3]}")
    assert ok, failures


def test_criterion_01_three_way_agreement(report_criterion):
    start = time.perf_counter()
    failures = []
    cells = 0
    for n, qq in [(2, 2), (2, 3), (3, 2), (4, 2)]:
        closed = a_table(n, 2, qq, "closed")
        charsum = a_table(n, 2, qq, "charsum")
        brute = brute_count_gl(n, qq, 2)
        keys = set(closed.entries) | set(charsum.entries) | set(brute.entries)
        cells += len(keys)
        for dims in sorted(keys):
            if not closed[dims] == charsum[dims] == brute[dims]:
                failures.append((n, qq, dims))
    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"runtime {elapsed:.1f}s >= 30s")
    _finish(report_criterion, 1, failures,
            f"closed = charsum = brute force on {cells} cells, k=2 ({elapsed:.1f}s)")


def test_criterion_02_three_factors(report_criterion):
    start = time.perf_counter()
    failures = []
    for n, qq in [(2, 2), (3, 2)]:
        closed = a_table(n, 3, qq, "closed")
        brute = brute_count_gl(n, qq, 3)
        failures += [(n, qq, d) for d in closed.mismatches(brute)]
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.1f}s >= 10s")
    _finish(report_criterion, 2, failures, f"k=3 closed form = brute force ({elapsed:.1f}s)")


def test_criterion_03_symbolic_identities(report_criterion):
    failures = []
    for n in range(1, 9):
        for t, u in product(range(n + 1), repeat=2):
            if b_multi(n, (t, u)) != b_two(n, t, u):
                failures.append(("b_multi", n, t, u))
            if t < n and u < n and t + u <= n and b_two_hypergeometric(n, t, u) != b_two(n, t, u):
                failures.append(("2phi1", n, t, u))
    for n in range(1, 7):
        for k in (1, 2, 3):
            table = a_table(n, k)
            if table.total() != gl_order(n, q) ** (k - 1):
                failures.append(("row sum", n, k))
            for rs in product(range(n), repeat=k):
                if genus(n, rs) == 0 and table[rs] != genus0_count(n, rs):
                    failures.append(("genus 0", n, rs))
                if k == 2 and rs[0] > 0 and rs[1] > 0 and genus(n, rs) > 0:
                    if a_two_explicit(n, *rs) != table[rs]:
                        failures.append(("P_g", n, rs))
    for n in range(1, 13):
        total = sum((hook_weight(n, d, q) for d in range(n)), 0 * q)
        if total != qpoch_q(n - 1, q):
            failures.append(("hook sum", n))
    _finish(report_criterion, 3, failures,
            "b_multi = b_two = 2phi1 (n<=8); genus 0, P_g, row sums (n<=6); hook sum (n<=12)")


def test_criterion_04_reflections(report_criterion):
    failures = []
    for n in range(1, 5):
        for ell in range(1, 5):
            if a_table(n, ell)[(n - 1,) * ell] != reflection_count(n, ell):
                failures.append(("extraction", n, ell))
    for n, qq, ell in [(2, 2, 2), (2, 2, 3), (3, 2, 2)]:
        brute = brute_count_gl(n, qq, ell)[(n - 1,) * ell]
        if brute != reflection_count(n, ell, qq):
            failures.append(("oracle", n, qq, ell))
    t22, t23 = reflection_count(2, 2, 2), reflection_count(2, 3, 2)
    if (t22, t23) != (3, 0):
        failures.append(("values", t22, t23))
    _finish(report_criterion, 4, failures,
            f"t_q(n, l) = extraction (n, l <= 4) = oracle; t_2(2,2)={t22}, t_2(2,3)={t23}")


def _remark_rhs(n, t, u):
    # (n-t-1)!(n-u-1)! / ((n-1)!(n-t-u-1)!), with 1/(-1)! = 0
    if n - t - u - 1 < 0:
        return Fraction(0)
    return Fraction(factorial(n - t - 1) * factorial(n - u - 1),
                    factorial(n - 1) * factorial(n - t - u - 1))


def test_criterion_05_limits_at_one(report_criterion):
    failures = []
    for m in range(6):
        for k in range(1, 4):
            for rs in product(range(m + 1), repeat=k):
                if m_q(m, rs).limit_q1() != m_classical(m, rs):
                    failures.append(("M", m, rs))
    checked = 0
    for n in range(1, 7):
        for t, u in product(range(n), repeat=2):
            if t + u > n:
                continue
            coeff = (qfact(n - t - 1, q) * qfact(n - u - 1, q) / (qfact(n - 1, q) * qfact(n - t - u, q))
                     * (q ** n - q ** t - q ** u + 1) / (q - 1))
            checked += 1
            if coeff.limit_q1() != _remark_rhs(n, t, u):
                failures.append(("coefficient", n, t, u))
            if b_two(n, t, u).limit_q1() != _remark_rhs(n, t, u):
                failures.append(("b_two", n, t, u))
    _finish(report_criterion, 5, failures,
            f"M^m(q) -> M^m (m<=5, k<=3); two-factor coefficient limits ({checked} cells, n<=6)")


def test_criterion_06_expected_genus(report_criterion):
    failures = []
    for n in (2, 3):
        closed = expected_genus(n, 2)
        brute = genus_stats(n, 2, 2).mean()
        if closed != brute:
            failures.append(("oracle", n, closed, brute))
    if expected_genus(2, 2) != Fraction(1, 3):
        failures.append(("value", expected_genus(2, 2)))
    for n in range(1, 6):
        if expected_genus(n) != expected_genus_from_table(a_table(n, 2)):
            failures.append(("symbolic", n))
    _finish(report_criterion, 6, failures,
            f"closed sum = oracle mean (1/3 at (2,2), {expected_genus(3, 2)} at (3,2)); "
            "symbolic n<=5")


def test_criterion_07_fulman_census(report_criterion):
    failures = []
    for n, qq in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        if fixed_dim_census(n, qq) != fulman_series(n, qq):
            failures.append((n, qq))
    census = fixed_dim_census(2, 2)
    if census != [2, 3, 1]:
        failures.append(("(2,2)", census))
    _finish(report_criterion, 7, failures, f"fixed-dimension census = generating series; (N0,N1,N2) at (2,2) = {tuple(census)}")


def test_criterion_08_colored_identity(report_criterion):
    failures = []
    for n, qq in [(2, 2), (3, 2)]:
        G = group_order(n, qq)
        for r, s in product(range(n + 1), repeat=2):
            lhs = G * b_two(n, r, s, qq)
            rhs = colored_count(n, qq, r, s)
            if lhs != rhs:
                failures.append((n, qq, r, s, lhs, rhs))
    _finish(report_criterion, 8, failures, "|G| b_two(n,r,s) = surjection-weighted oracle count")


def test_criterion_09_asymptotics(report_criterion):
    start = time.perf_counter()
    failures = []
    worst_change = Decimal(0)
    lo_hi = [Decimal("Infinity"), Decimal(0)]
    for g in (0, 1, 2):
        for qq in (2, 3):
            ratios = {}
            for n in range(2 * g + 2, 41):
                gr = growth_ratio(g, qq, n)
                ratios[n] = gr.ratio
                if not Fraction(1, 1000) <= gr.ratio_squared <= 1000:
                    failures.append(("bounds", g, qq, n, gr.ratio_squared))
                lo_hi = [min(lo_hi[0], gr.ratio), max(lo_hi[1], gr.ratio)]
            for n in range(32, 41):
                change = abs(ratios[n] - ratios[n - 2]) / ratios[n - 2]
                worst_change = max(worst_change, change)
                if change >= Decimal("1e-3"):
                    failures.append(("change", g, qq, n, change))
    n0 = growth_ratio(0, 2, 4).count
    if n0 != 362:
        failures.append(("N0(4)", n0))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    _finish(report_criterion, 9, failures,
            f"ratio in [{lo_hi[0]:.4f}, {lo_hi[1]:.4f}], max same-parity change for n>=30 "
            f"{worst_change:.2e}, N0(4)={n0} ({elapsed:.1f}s)")


def test_criterion_10_max_weight_monomial(report_criterion):
    failures = []
    for g in range(1, 5):
        _, where = p_g_polynomial(g).max_weight_monomials((2, 1, 1))
        if where != [(1, g - 1, g - 1)]:
            failures.append((g, where))
    _finish(report_criterion, 10, failures, "unique max-weight monomial x y^(g-1) z^(g-1), g=1..4")


def test_criterion_11_symmetric_group(report_criterion):
    failures = []
    for n in range(1, 7):
        coeffs = sn_binomial_coefficients(brute_count_sn(n, 2))
        for t, u in product(range(n + 1), repeat=2):
            expected = 0
            if t >= 1 and u >= 1 and t + u <= n + 1:
                expected = factorial(n - 1) // (
                    factorial(t - 1) * factorial(u - 1) * factorial(n - t - u + 1))
                if m_classical(n - 1, [t - 1, u - 1]) != expected:
                    failures.append(("M vs multinomial", n, t, u))
            if coeffs.get((t, u), 0) != expected:
                failures.append(("k=2", n, t, u))
    for n in range(1, 6):
        coeffs = sn_binomial_coefficients(brute_count_sn(n, 3))
        for p in product(range(n + 1), repeat=3):
            expected = m_classical(n - 1, [x - 1 for x in p]) if min(p) >= 1 else 0
            if coeffs.get(p, 0) != expected:
                failures.append(("k=3", n, p))
    _finish(report_criterion, 11, failures,
            "S_n binomial-basis coefficients = multinomials (n<=6, k=2) and M^(n-1) (n<=5, k=3)")
