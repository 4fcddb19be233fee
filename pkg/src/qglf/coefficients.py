"""Closed-form coefficients and counts for factorizations of a regular elliptic element.

All functions take ``q`` as ``None``/``"sym"`` (exact rational functions in q)
or an integer (exact rationals at that q); see :mod:`qglf.qcalc`.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from qglf.qcalc import (
    MultiLaurent,
    as_q,
    binom2,
    falling_to_monomial,
    gl_order,
    gl_order_int,
    is_symbolic,
    lift,
    one,
    qbin,
    qfact,
    qint,
    qmultinomial,
    qpoch_q,
)
from qglf.qpoly import QRational


def genus(n: int, rs: Sequence[int]) -> int:
    """(k - 1) n - sum(r_i); negative values mean the count is zero."""
    return (len(rs) - 1) * n - sum(rs)


def m_classical(m: int, rs: Sequence[int]) -> int:
    """Number of tuples of r_i-subsets of [m] with empty common intersection."""
    if not rs:
        return 0
    if min(rs) < 0:
        return 0
    return sum(
        (-1) ** d * comb(m, d) * prod(comb(m - d, r - d) for r in rs)
        for d in range(min(rs) + 1)
    )


def m_q(m: int, rs: Sequence[int], q=None):
    """q-analogue of :func:`m_classical`; a Laurent polynomial in q."""
    q = as_q(q)
    if not rs:
        return 0 * q
    k = len(rs)
    total = 0 * q
    for d in range(min(rs) + 1):
        term = (-1) ** d * q ** (binom2(d + 1) - k * d) * qbin(m, d, q)
        for r in rs:
            term = term * qbin(m - d, r - d, q)
        total = total + term
    if is_symbolic(q):
        assert total.is_laurent(), f"M-coefficient {total} is not a Laurent polynomial"
    return total


def subspace_meet_formula(m: int, rs: Sequence[int], q=None):
    """Alternating sum counting subspace tuples of F_q^m with trivial intersection.

    Same shape as :func:`m_q` except for the power of q in each summand.
    """
    q = as_q(q)
    if not rs:
        return 0 * q
    total = 0 * q
    for a in range(min(rs) + 1):
        term = (-1) ** a * q ** binom2(a) * qbin(m, a, q)
        for r in rs:
            term = term * qbin(m - a, r - a, q)
        total = total + term
    return total


def b_two(n: int, t: int, u: int, q=None):
    """Coefficient of B_t(x) B_u(y) in F(x, y)/|G| for two factors."""
    q = as_q(q)
    if not (0 <= t <= n and 0 <= u <= n):
        raise ValueError(f"indices ({t}, {u}) out of range for n={n}")
    if (t, u) in ((n, 0), (0, n)):
        return one(q)
    if t + u > n or t == n or u == n:
        return 0 * q
    ratio = qfact(n - t - 1, q) * qfact(n - u - 1, q) / (qfact(n - 1, q) * qfact(n - t - u, q))
    return q ** (t * u - t - u) * ratio * (q ** n - q ** t - q ** u + 1) / (q - 1)


def b_two_hypergeometric(n: int, t: int, u: int, q=None):
    """The same coefficient written as 2phi1(q^-t, q^-u; q^(1-n); q^(t+u-n))."""
    from qglf.qcalc import qhyper_terminating

    q = as_q(q)
    return qhyper_terminating([q ** -t, q ** -u], [q ** (1 - n)], q ** (t + u - n), q)


def b_multi(n: int, p: Sequence[int], q=None):
    """Coefficient of prod B_{p_i}(x_i) in F/|G|^(k-1) for k = len(p) factors."""
    q = as_q(q)
    if any(not 0 <= x <= n for x in p):
        raise ValueError(f"indices {list(p)} out of range for n={n}")
    kept = [x for x in p if x != n]
    value = m_q(n - 1, kept, q)
    if not value:
        return value
    for x in kept:
        value = value / qbin(n - 1, x, q)
    return value


def b_multi_hypergeometric(n: int, p: Sequence[int], q=None):
    """j_phi_(j-1) form of :func:`b_multi`, j = number of entries below n."""
    from qglf.qcalc import qhyper_terminating

    q = as_q(q)
    kept = [x for x in p if x != n]
    j = len(kept)
    if j == 0:
        return 0 * q
    return qhyper_terminating(
        [q ** -x for x in kept], [q ** (1 - n)] * (j - 1), q ** (n * (1 - j) + sum(kept)), q
    )


def genus0_count(n: int, rs: Sequence[int], q=None):
    """Number of genus-0 factorizations with fixed space dimensions ``rs``."""
    q = as_q(q)
    if genus(n, rs) != 0:
        raise ValueError(f"dimensions {list(rs)} do not have genus 0 for n={n}")
    if any(not 0 <= r < n for r in rs):
        raise ValueError("genus-0 formula needs 0 <= r_i < n")
    return q ** sum((n - r - 1) * r for r in rs) * (q ** n - 1) ** (len(rs) - 1)


def reflection_count(n: int, ell: int, q=None):
    """Factorizations of a regular elliptic element into ``ell`` reflections."""
    q = as_q(q)
    bracket = (-1) ** (n - 1) * qpoch_q(n - 1, q)
    for k in range(n):
        bracket = bracket + (-1) ** (k + n) * q ** binom2(k + 1) * qbin(n - 1, k, q) * (
            1 + q ** (n - k - 1) - q ** (n - k)
        ) ** ell
    return (-qint(n, q)) ** ell / (q ** binom2(n) * qpoch_q(n, q)) * bracket


def p_g_polynomial(g: int) -> MultiLaurent:
    """The Laurent polynomial P_g(x, y, z) with coefficients in Q(q), g >= 1."""
    if g < 1:
        raise ValueError("P_g is defined for g >= 1")
    q = as_q()
    names = ("x", "y", "z")
    x = MultiLaurent.var(names, "x")
    y = MultiLaurent.var(names, "y")
    z = MultiLaurent.var(names, "z")

    def ypow(k):
        return MultiLaurent.var(names, "y", k)

    def zpow(k):
        return MultiLaurent.var(names, "z", k)

    def prod_minus_one(v, top):
        acc = MultiLaurent(names, {(0, 0, 0): one(q)})
        for i in range(1, top + 1):
            acc = acc * (v * q ** i - 1)
        return acc

    edge = ypow(-g) * zpow(g) * prod_minus_one(y, g) + ypow(g) * zpow(-g) * prod_minus_one(z, g)
    total = edge * ((-1) ** g * q ** (-g))
    for tp in range(g):
        for up in range(g):
            if tp + up > g:
                continue
            coeff = (-1) ** (tp + up) * lift(qmultinomial(g, [tp, up, g - tp - up]), q) \
                * q ** (tp * up - tp - up)
            term = ypow(up - tp) * zpow(tp - up) * (x - y * q ** tp - z * q ** up + 1)
            term = term * prod_minus_one(z, g - tp - 1) * prod_minus_one(y, g - up - 1)
            total = total + term * coeff
    return total


def a_two_explicit(n: int, r: int, s: int, q=None):
    """a_{r,s}(q) for r, s > 0 and genus g = n - r - s > 0 via P_g."""
    q = as_q(q)
    g = n - r - s
    if g <= 0 or r <= 0 or s <= 0:
        raise ValueError("explicit formula needs r, s > 0 and n - r - s > 0")
    pg = _p_g_cached(g)
    value = pg.evaluate([q ** n, q ** r, q ** s], q)
    return q ** (2 * r * s + (g - 1) * n - binom2(g)) * (q ** n - 1) / ((q - 1) ** g * qfact(g, q)) * value


_PG_CACHE: dict[int, MultiLaurent] = {}


def _p_g_cached(g: int) -> MultiLaurent:
    if g not in _PG_CACHE:
        _PG_CACHE[g] = p_g_polynomial(g)
    return _PG_CACHE[g]


def a_two_extract(n: int, r: int, s: int, q=None):
    """a_{r,s}(q) by expanding the two-factor falling-basis series at one cell."""
    q = as_q(q)
    if r + s > n:
        return 0 * q
    C = falling_to_monomial(n, q)
    total = 0 * q
    for t in range(r, n + 1):
        for u in range(s, n + 1 - t if t < n else 1):
            b = b_two(n, t, u, q)
            if b:
                total = total + b * C[t][r] * C[u][s]
    return gl_order(n, q) * total


@dataclass(frozen=True)
class GrowthRatio:
    """Exact squared ratio N_g(n)^2 |GL_g|^2 / q^((n+g)^2) and its square root."""
    g: int
    q: int
    n: int
    count: int
    ratio_squared: Fraction
    ratio: Decimal


def genus_total(g: int, q: int, n: int) -> int:
    """N_g(n): two-factor factorizations of genus g in GL_n(F_q)."""
    if n <= g:
        raise ValueError("need n > g")
    m = n - g
    qq = as_q(q)
    total = a_two_extract(n, 0, m, qq) + a_two_extract(n, m, 0, qq)
    for r in range(1, m):
        s = m - r
        total += genus0_count(n, [r, s], qq) if g == 0 else a_two_explicit(n, r, s, qq)
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral count {total}")
    return int(total)


def growth_ratio(g: int, q: int, n: int, digits: int = 30) -> GrowthRatio:
    count = genus_total(g, q, n)
    ratio_sq = Fraction(count ** 2 * gl_order_int(g, q) ** 2, q ** ((n + g) ** 2))
    with localcontext() as ctx:
        ctx.prec = digits + 10
        root = (Decimal(ratio_sq.numerator) / Decimal(ratio_sq.denominator)).sqrt()
        ctx.prec = digits
        root = +root
    return GrowthRatio(g, q, n, count, ratio_sq, root)
