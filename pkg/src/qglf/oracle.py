"""Brute-force ground truth by exhaustive enumeration.

Every count here comes from listing group elements (or subsets, or
subspaces) directly, with no use of the closed forms.  The last factor of
a factorization is always solved from c = u_1 ... u_k rather than enumerated.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Sequence

from qglf.glnq import (
    DEFAULT_BUDGET_BITS,
    BudgetExceeded,
    MatrixFq,
    enumerate_gl,
    find_regular_elliptic,
    group_order,
    is_regular_elliptic,
    mat_mul,
    rank_mod,
    shard_rows,
)
from qglf.tables import CountTable

DEFAULT_BUDGET = 10 ** 8

__all__ = [
    "BudgetExceeded",
    "GenusHistogram",
    "brute_count_gl",
    "brute_count_sn",
    "colored_count",
    "fixed_dim_census",
    "genus_stats",
    "sn_binomial_coefficients",
    "subset_meet_count",
    "subspace_meet_count",
    "surj",
]


def _check_budget(tuples: int, budget: int) -> None:
    if tuples > budget:
        raise BudgetExceeded(f"{tuples} tuples exceed the budget of {budget}")


# ---------------------------------------------------------------------------
# GL_n(F_q)


def _fixed_from(c_rows, p_rows, n: int, q: int) -> int:
    # u = p^-1 c has fixed space ker(c - p), so no inverse is needed
    diff = [[(a - b) % q for a, b in zip(r, s)] for r, s in zip(c_rows, p_rows)]
    return n - rank_mod(diff, q)


def _fixed(rows, n: int, q: int) -> int:
    diff = [[(x - (i == j)) % q for j, x in enumerate(r)] for i, r in enumerate(rows)]
    return n - rank_mod(diff, q)


def _shard_worker(args) -> Counter:
    n, q, k, c_rows, first, budget_bits = args
    counts: Counter = Counter()
    head = [(m.rows, _fixed(m.rows, n, q))
            for m in enumerate_gl(n, q, budget_bits, first_row=first)]
    if k == 1:
        return counts
    rest = []
    if k > 2:
        rest = [(m.rows, _fixed(m.rows, n, q)) for m in enumerate_gl(n, q, budget_bits)]
    for rows, d in head:
        if k == 2:
            counts[(d, _fixed_from(c_rows, rows, n, q))] += 1
            continue
        for tail in product(rest, repeat=k - 2):
            prod_rows = rows
            dims = [d]
            for r, e in tail:
                prod_rows = mat_mul(prod_rows, r, q)
                dims.append(e)
            dims.append(_fixed_from(c_rows, prod_rows, n, q))
            counts[tuple(dims)] += 1
    return counts


def brute_count_gl(n: int, q: int, k: int, c: MatrixFq | None = None,
                   budget: int = DEFAULT_BUDGET, threads: int = 1,
                   budget_bits: float = DEFAULT_BUDGET_BITS) -> CountTable:
    """Count k-factor factorizations of c in GL_n(F_q) by fixed space dimensions."""
    if k < 1:
        raise ValueError("need at least one factor")
    if c is None:
        c = find_regular_elliptic(n, q)
    if c.n != n or c.q != q:
        raise ValueError("c does not live in GL_n(F_q)")
    if not is_regular_elliptic(c):
        raise ValueError(f"{c} is not regular elliptic")
    _check_budget(group_order(n, q) ** (k - 1), budget)
    if k == 1:
        return CountTable(1, n, q, {(0,): 1})
    jobs = [(n, q, k, c.rows, row, budget_bits) for row in shard_rows(n, q)]
    total: Counter = Counter()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_shard_worker, jobs):
                total.update(part)
    else:
        for job in jobs:
            total.update(_shard_worker(job))
    return CountTable(k, n, q, dict(total))


def fixed_dim_census(n: int, q: int, budget_bits: float = DEFAULT_BUDGET_BITS) -> list[int]:
    """Number of elements of GL_n(F_q) with each fixed space dimension 0..n."""
    out = [0] * (n + 1)
    for m in enumerate_gl(n, q, budget_bits):
        out[_fixed(m.rows, n, q)] += 1
    return out


@lru_cache(maxsize=None)
def surj(q: int, d: int, r: int) -> int:
    """Number of surjective linear maps F_q^d -> F_q^r."""
    out = 1
    for i in range(r):
        out *= q ** d - q ** i
    return out


def colored_count(n: int, q: int, r: int, s: int, c: MatrixFq | None = None,
                  budget: int = DEFAULT_BUDGET, threads: int = 1) -> int:
    """Sum over c = uv of surj(fixed_dim u, r) * surj(fixed_dim v, s)."""
    table = brute_count_gl(n, q, 2, c, budget, threads)
    return sum(v * surj(q, d, r) * surj(q, e, s) for (d, e), v in table.items())


@dataclass(frozen=True)
class GenusHistogram:
    k: int
    n: int
    counts: dict = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())

    def mean(self) -> Fraction:
        return Fraction(sum(g * v for g, v in self.counts.items()), self.total())


def histogram_from_table(table: CountTable) -> GenusHistogram:
    counts: Counter = Counter()
    for dims, v in table.items():
        counts[(table.arity - 1) * table.n - sum(dims)] += v
    return GenusHistogram(table.arity, table.n, dict(sorted(counts.items())))


def genus_stats(n: int, q: int, k: int, c: MatrixFq | None = None,
                budget: int = DEFAULT_BUDGET, threads: int = 1) -> GenusHistogram:
    return histogram_from_table(brute_count_gl(n, q, k, c, budget, threads))


# ---------------------------------------------------------------------------
# symmetric group


def cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def _compose(a, b):
    """(a b)(i) = a(b(i)); products act right to left."""
    return tuple(a[i] for i in b)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def brute_count_sn(n: int, k: int, budget: int = DEFAULT_BUDGET) -> CountTable:
    """Factorizations of the long cycle i -> i+1 (mod n) in S_n, by cycle counts."""
    if k < 1:
        raise ValueError("need at least one factor")
    _check_budget(factorial(n) ** (k - 1), budget)
    c = tuple((i + 1) % n for i in range(n))
    elems = [(p, cycle_count(p)) for p in permutations(range(n))]
    counts: Counter = Counter()
    for tup in product(elems, repeat=k - 1):
        prod_ = tuple(range(n))
        for p, _ in tup:
            prod_ = _compose(prod_, p)
        last = _compose(_inverse(prod_), c)
        counts[tuple(e for _, e in tup) + (cycle_count(last),)] += 1
    return CountTable(k, n, "Sn", dict(counts))


def sn_binomial_coefficients(table: CountTable) -> dict:
    """Coefficients c_p with sum a_r x^r / (n!)^(k-1) = sum_p c_p prod binom(x_i, p_i).

    Recovered exactly by iterated forward differences at the origin.
    """
    n, k = table.n, table.arity
    scale = factorial(n) ** (k - 1)

    def value(point):
        acc = 0
        for dims, v in table.items():
            term = v
            for x, e in zip(point, dims):
                term *= x ** e
            acc += term
        return Fraction(acc, scale)

    grid = {pt: value(pt) for pt in product(range(n + 1), repeat=k)}
    out = {}
    for p in product(range(n + 1), repeat=k):
        acc = Fraction(0)
        for j in product(*(range(x + 1) for x in p)):
            sign = (-1) ** (sum(p) - sum(j))
            w = 1
            for a, b in zip(p, j):
                w *= comb(a, b)
            acc += sign * w * grid[j]
        if acc:
            out[p] = acc
    return out


# ---------------------------------------------------------------------------
# subsets and subspaces


def subset_meet_count(m: int, rs: Sequence[int]) -> int:
    """Tuples of subsets of [m] with sizes rs whose common intersection is empty."""
    if not rs:
        return 0
    if any(r < 0 or r > m for r in rs):
        return 0
    families = [[sum(1 << i for i in c) for c in combinations(range(m), r)] for r in rs]
    full = (1 << m) - 1
    count = 0
    for tup in product(*families):
        acc = full
        for s in tup:
            acc &= s
        count += acc == 0
    return count


def _vec_index(v, q: int) -> int:
    out = 0
    for x in reversed(v):
        out = out * q + x
    return out


@lru_cache(maxsize=None)
def subspaces(m: int, q: int, d: int) -> tuple[int, ...]:
    """All d-dimensional subspaces of F_q^m as bitmasks over vector indices."""
    vectors = list(product(range(q), repeat=m))
    layer = {1}  # the zero subspace holds only the zero vector (index 0)
    members = {1: [tuple([0] * m)]}
    for _ in range(d):
        nxt = {}
        for mask in layer:
            span = members[mask]
            for v in vectors:
                if (mask >> _vec_index(v, q)) & 1:
                    continue
                new = {tuple((a + t * b) % q for a, b in zip(w, v))
                       for w in span for t in range(q)}
                key = sum(1 << _vec_index(w, q) for w in new)
                if key not in nxt:
                    nxt[key] = sorted(new)
        layer = set(nxt)
        members.update(nxt)
    return tuple(sorted(layer))


def subspace_meet_count(m: int, q: int, rs: Sequence[int],
                        budget: int = DEFAULT_BUDGET) -> int:
    """Tuples of subspaces of F_q^m with dimensions rs and trivial common intersection."""
    if not rs:
        return 0
    if any(r < 0 or r > m for r in rs):
        return 0
    families = [subspaces(m, q, r) for r in rs]
    size = 1
    for f in families:
        size *= len(f)
    _check_budget(size, budget)
    count = 0
    for tup in product(*families):
        acc = -1
        for s in tup:
            acc &= s
        count += acc == 1
    return count


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("QGLF_THREADS", "1")))
    except ValueError:
        return 1
