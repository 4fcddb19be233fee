from fractions import Fraction
from itertools import product

import pytest

from qglf.coefficients import b_multi, b_two
from qglf.genfun import (
    GENERIC,
    Hook,
    a_table,
    assemble_F,
    char_zr,
    closed_form_F,
    expected_genus,
    expected_genus_from_table,
    f_easy,
    f_hook,
    fulman_series,
    hook_weight,
)
from qglf.qcalc import gl_order, qbin, qpoch_q
from qglf.qpoly import QRational

q = QRational.q()


def test_char_zr_examples():
    assert char_zr(2, GENERIC, 2) == 1
    assert char_zr(2, GENERIC, 0) == q


def test_char_zr_rejects_bad_input():
    with pytest.raises(ValueError):
        char_zr(2, Hook(2), 0)
    with pytest.raises(ValueError):
        char_zr(2, GENERIC, 3)
    with pytest.raises(ValueError):
        char_zr(2, "cuspidal", 0)


def test_trivial_hook_counts_elements():
    # the trivial character sums to the class sizes, i.e. the census
    assert [char_zr(2, Hook(0), r, 2) for r in range(3)] == [2, 3, 1]


def test_f_easy_examples():
    assert f_easy(1).monomial() == (-1, 1)  # x - 1
    coeffs = f_easy(3).coefficients
    assert coeffs[:3] == (0, 0, 0) and coeffs[3] == gl_order(3, q)


@pytest.mark.parametrize("n", range(1, 6))
def test_f_easy_matches_character_values(n):
    assert f_easy(n).monomial() == tuple(char_zr(n, GENERIC, r) for r in range(n + 1))


@pytest.mark.parametrize("n", range(1, 5))
def test_f_hook_matches_character_values(n):
    for d in range(n):
        expected = tuple(char_zr(n, Hook(d), r) for r in range(n + 1))
        assert f_hook(n, d).monomial() == expected


def test_f_hook_small_case():
    assert f_hook(2, 1).normalized == (0, 1 / q, 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_trivial_hook_is_fulman(n):
    assert list(f_hook(n, 0).monomial()) == fulman_series(n)


@pytest.mark.parametrize("n", range(1, 13))
def test_hook_alternating_sum(n):
    total = sum((hook_weight(n, d, q) for d in range(n)), 0 * q)
    assert total == qpoch_q(n - 1, q)


@pytest.mark.parametrize("n", range(1, 7))
def test_assembly_matches_b_two(n):
    F = assemble_F(n, 2)
    for t, u in product(range(n + 1), repeat=2):
        assert F.coefficient((t, u)) == b_two(n, t, u)


@pytest.mark.parametrize("n", range(1, 5))
def test_assembly_matches_b_multi(n):
    F = assemble_F(n, 3)
    for p in product(range(n + 1), repeat=3):
        assert F.coefficient(p) == b_multi(n, p)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in (2, 3)])
def test_paths_agree_and_round_trip(n, k):
    F = assemble_F(n, k)
    assert F.equals(closed_form_F(n, k))
    back = F.to_monomial().to_falling()
    assert back.support() == F.support()
    assert all(back.coefficient(v) == F.coefficient(v) for v in F.support())


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in (2, 3)])
def test_row_sums(n, k):
    table = a_table(n, k)
    assert table.total() == gl_order(n, q) ** (k - 1)
    F = closed_form_F(n, k)
    assert F.evaluate([QRational(1)] * k) == 1


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in (2, 3)])
def test_subadditivity_zeros(n, k):
    table = a_table(n, k)
    for rs in product(range(n + 1), repeat=k):
        if sum(n - r for r in rs) < n:
            assert table[rs] == 0


def test_a_table_examples():
    assert a_table(2, 2, 2).entries == {(0, 0): 1, (0, 2): 1, (1, 1): 3, (2, 0): 1}
    assert a_table(2, 2)[(1, 1)] == q ** 2 - 1
    assert a_table(2, 3, 2)[(1, 1, 1)] == 0


def test_a_table_charsum_matches_closed_numeric():
    for qq in (2, 3):
        for n in range(1, 4):
            assert a_table(n, 2, qq, "charsum").agrees_with(a_table(n, 2, qq))


def test_a_table_rejects_unknown_method():
    with pytest.raises(ValueError):
        a_table(2, 2, method="magic")


def test_fulman_examples():
    assert fulman_series(2, 2) == [2, 3, 1]
    for n in range(1, 6):
        s = fulman_series(n)
        assert s[n] == 1
        assert sum(s, 0 * q) == gl_order(n, q)


def test_expected_genus_examples():
    assert expected_genus(2, 2) == Fraction(1, 3)
    assert expected_genus(1) == 1 - 2 / (q - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_expected_genus_from_table(n):
    assert expected_genus(n) == expected_genus_from_table(a_table(n, 2))


def test_numeric_and_symbolic_agree():
    sym = a_table(3, 2)
    num = a_table(3, 2, 5)
    for dims, v in sym.items():
        assert v(Fraction(5)) == num[dims]


def test_binomial_basis_value_at_powers():
    # B_t(q^N) = qbin(N, t): F at x = q^N counts a weighted sum
    F = closed_form_F(3, 2)
    val = F.evaluate([q ** 3, QRational(1)])
    expected = sum((F.coefficient((t, 0)) * qbin(3, t, q) for t in range(4)), 0 * q)
    assert val == expected
