import random

import pytest

from qglf.genfun import fulman_series
from qglf.glnq import (
    BudgetExceeded,
    MatrixFq,
    PolyFq,
    char_poly,
    companion,
    count_irreducible,
    enumerate_gl,
    find_regular_elliptic,
    fixed_dim,
    group_order,
    is_regular_elliptic,
    is_singer,
    monic_polys,
    multiplicative_order,
    regular_elliptic_elements,
)
from qglf.oracle import fixed_dim_census

SMALL = [(2, 2), (3, 2), (2, 3), (3, 3), (2, 5)]


def test_group_order_examples():
    assert group_order(2, 2) == 6
    assert group_order(3, 2) == 168
    assert group_order(2, 3) == 48


@pytest.mark.parametrize("n,q", [(1, 2), (1, 3), (2, 2), (3, 2), (2, 3), (4, 2)])
def test_enumeration_length(n, q):
    mats = list(enumerate_gl(n, q))
    assert len(mats) == group_order(n, q)
    assert len(set(mats)) == len(mats)
    assert all(m.is_invertible() for m in mats)


def test_enumeration_is_lexicographic():
    rows = [m.rows for m in enumerate_gl(2, 3)]
    assert rows == sorted(rows)


def test_enumeration_shards_partition_the_group():
    from qglf.glnq import shard_rows

    full = list(enumerate_gl(3, 2))
    pieces = []
    for row in shard_rows(3, 2):
        pieces.extend(enumerate_gl(3, 2, first_row=row))
    assert pieces == full


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_gl(5, 3))
    with pytest.raises(ValueError):
        list(enumerate_gl(2, 4))


def test_fixed_dim_examples():
    assert fixed_dim(MatrixFq.identity(3, 2)) == 3
    assert fixed_dim(MatrixFq.of([[1, 1], [0, 1]], 2)) == 1
    for n, q in SMALL:
        assert fixed_dim(find_regular_elliptic(n, q)) == 0


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3)])
def test_fixed_dim_conjugation_invariant(n, q):
    rng = random.Random(n * 10 + q)
    group = list(enumerate_gl(n, q))
    for _ in range(50):
        g, h = rng.choice(group), rng.choice(group)
        assert fixed_dim(h @ g @ h.inverse()) == fixed_dim(g)


def test_inverse_and_power():
    for m in enumerate_gl(2, 3):
        assert m @ m.inverse() == MatrixFq.identity(2, 3)
        assert m ** -1 == m.inverse()


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_census_matches_fulman(n, q):
    assert fixed_dim_census(n, q) == fulman_series(n, q)


def test_char_poly_examples():
    p = PolyFq.of([1, 1, 1], 2)
    assert char_poly(companion(p)) == p
    assert char_poly(MatrixFq.identity(2, 2)) == PolyFq.of([1, 0, 1], 2)
    for n in range(2, 6):
        cyc = MatrixFq.of([[1 if (i + 1) % n == j else 0 for j in range(n)] for i in range(n)], 3)
        assert char_poly(cyc) == PolyFq.of([-1] + [0] * (n - 1) + [1], 3)


@pytest.mark.parametrize("n,q", [(3, 2), (2, 3)])
def test_char_poly_companion_round_trip(n, q):
    for p in monic_polys(n, q):
        assert char_poly(companion(p)) == p


def test_char_poly_against_determinant():
    # det(xI - m) at every x in F_q must equal the characteristic polynomial
    rng = random.Random(1)
    q = 5
    for _ in range(20):
        m = MatrixFq.of([[rng.randrange(q) for _ in range(3)] for _ in range(3)], q)
        p = char_poly(m)
        for x in range(q):
            shifted = MatrixFq.of([[(x * (i == j) - m.rows[i][j]) for j in range(3)]
                                   for i in range(3)], q)
            det_zero = shifted.rank() < 3
            assert det_zero == (p(x) == 0)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("q", [2, 3])
def test_irreducible_count(n, q):
    found = sum(p.is_irreducible() for p in monic_polys(n, q))
    assert found == count_irreducible(n, q)


def test_irreducibility_small():
    assert PolyFq.of([1, 1, 1], 2).is_irreducible()
    assert not PolyFq.of([1, 0, 1], 2).is_irreducible()
    assert not PolyFq.of([1, 0, 1, 0, 1], 2).is_irreducible()  # (x^2+x+1)^2


def test_find_regular_elliptic_examples():
    c = find_regular_elliptic(2, 2, False)
    assert c.rows == ((0, 1), (1, 1))
    s = find_regular_elliptic(2, 2, True)
    assert s == c
    assert multiplicative_order(s, 3) == 3
    assert len(regular_elliptic_elements(2, 2)) == 2


@pytest.mark.parametrize("n,q", SMALL + [(4, 2), (4, 3), (5, 2)])
def test_singer_elements(n, q):
    s = find_regular_elliptic(n, q, True)
    assert is_singer(s)
    assert char_poly(s).is_irreducible()
    assert s ** (q ** n - 1) == MatrixFq.identity(n, q)


def test_regular_elliptic_count_gl3():
    # each irreducible cubic gives a class of size |G| / (q^3 - 1)
    elts = regular_elliptic_elements(3, 2)
    assert len(elts) == count_irreducible(3, 2) * group_order(3, 2) // (2 ** 3 - 1)


def test_gl1_edge_cases():
    assert find_regular_elliptic(1, 3).rows == ((2,),)
    assert not is_regular_elliptic(MatrixFq.identity(1, 5))
    with pytest.raises(LookupError):
        find_regular_elliptic(1, 2)
