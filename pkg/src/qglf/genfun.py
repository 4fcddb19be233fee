"""Character generating functions, their assembly into F, and count extraction.

F(x_1, ..., x_k) is the generating function of factorizations of a regular
elliptic element by fixed space dimension.  It is assembled from the
generating functions f_V of the few characters that do not vanish on the
element, expanded in the falling basis B_t(x) = (x; 1/q)_t / (q; q)_t, and
converted back to monomials to read off the counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence, Union

from qglf.coefficients import b_multi, b_two
from qglf.qcalc import (
    Exact,
    as_q,
    binom2,
    falling_to_monomial,
    gl_order,
    is_symbolic,
    monomial_to_falling,
    one,
    qbin,
    qfact,
    qint,
    qpoch_q,
)
from qglf.tables import CountTable

FALLING = "falling"
MONOMIAL = "monomial"
GENERIC = "generic"


@dataclass(frozen=True)
class Hook:
    """The unipotent character indexed by the hook <n-d, 1^d>."""

    d: int


CharKind = Union[str, Hook]


def _check_kind(n: int, kind: CharKind) -> None:
    if kind == GENERIC:
        return
    if not isinstance(kind, Hook):
        raise ValueError(f"unknown character kind {kind!r}")
    if not 0 <= kind.d <= n - 1:
        raise ValueError(f"hook index d={kind.d} out of range for n={n}")


def char_zr(n: int, kind: CharKind, r: int, q=None) -> Exact:
    """Normalized character value on the class sum of elements with fixed dimension r."""
    q = as_q(q)
    _check_kind(n, kind)
    if not 0 <= r <= n:
        raise ValueError(f"r={r} out of range for n={n}")
    sign = (-1) ** (n - r) * q ** binom2(n - r)
    base = qbin(n, r, q)
    if kind == GENERIC:
        return sign * base
    d = kind.d
    inner = 0 * q
    for j in range(1, n - max(r, d) + 1):
        poch = one(q)
        for i in range(j - 1):
            poch = poch * (1 - q ** (n - d - j + 1 + i))
        inner = inner + q ** (j * r - d) * qfact(n - j, q) / qfact(n - r - j, q) * poch
    return sign * (base + (1 - q) * qint(n, q) / qfact(r, q) * inner)


@dataclass(frozen=True)
class CharSeries:
    """f_V(x) stored by its falling-basis coefficients divided by |G|."""

    n: int
    kind: CharKind
    normalized: tuple
    q: object

    @property
    def coefficients(self) -> tuple:
        """Falling-basis coefficients of f_V itself."""
        g = gl_order(self.n, self.q)
        return tuple(c * g for c in self.normalized)

    def monomial(self) -> tuple:
        """Coefficients of x^0, ..., x^n in f_V(x)."""
        C = falling_to_monomial(self.n, self.q)
        g = gl_order(self.n, self.q)
        out = []
        for r in range(self.n + 1):
            acc = 0 * self.q
            for t in range(r, self.n + 1):
                if self.normalized[t] != 0:
                    acc = acc + self.normalized[t] * C[t][r]
            out.append(acc * g)
        return tuple(out)


def f_easy(n: int, q=None) -> CharSeries:
    q = as_q(q)
    coeffs = [0 * q] * n + [one(q)]
    return CharSeries(n, GENERIC, tuple(coeffs), q)


def f_hook(n: int, d: int, q=None) -> CharSeries:
    q = as_q(q)
    _check_kind(n, Hook(d))
    coeffs = [0 * q] * (n + 1)
    coeffs[n] = one(q)
    ratio = qfact(n - d - 1, q) / qfact(n - 1, q) * q ** (-d)
    for m in range(d, n):
        coeffs[m] = qfact(m, q) / qfact(m - d, q) * ratio
    return CharSeries(n, Hook(d), tuple(coeffs), q)


@dataclass(frozen=True)
class XSeries:
    """Polynomial in k markers stored as exponent vector -> coefficient.

    In the falling basis the vector (t_1, ..., t_k) stands for prod B_{t_i}(x_i).
    """

    arity: int
    rank: int
    basis: str
    terms: dict
    q: object

    def _convert(self, matrix, basis: str) -> XSeries:
        terms = {k: v for k, v in self.terms.items() if v != 0}
        for axis in range(self.arity):
            out: dict = {}
            for vec, c in terms.items():
                row = matrix[vec[axis]]
                for j, m in enumerate(row):
                    if m == 0:
                        continue
                    key = vec[:axis] + (j,) + vec[axis + 1:]
                    out[key] = out[key] + c * m if key in out else c * m
            terms = {k: v for k, v in out.items() if v != 0}
        return XSeries(self.arity, self.rank, basis, terms, self.q)

    def to_monomial(self) -> XSeries:
        if self.basis == MONOMIAL:
            return self
        return self._convert(falling_to_monomial(self.rank, self.q), MONOMIAL)

    def to_falling(self) -> XSeries:
        if self.basis == FALLING:
            return self
        return self._convert(monomial_to_falling(self.rank, self.q), FALLING)

    def coefficient(self, vec: Sequence[int]):
        return self.terms.get(tuple(vec), 0 * self.q)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(k for k, v in self.terms.items() if v != 0)

    def evaluate(self, point: Sequence):
        """Value at marker values ``point`` (domain elements)."""
        mono = self.to_monomial()
        total = 0 * self.q
        for vec, c in mono.terms.items():
            term = c
            for x, e in zip(point, vec):
                term = term * x ** e
            total = total + term
        return total

    def equals(self, other: XSeries) -> bool:
        a, b = self.to_falling(), other.to_falling()
        keys = set(a.terms) | set(b.terms)
        return all(a.coefficient(k) == b.coefficient(k) for k in keys)


def hook_weight(n: int, d: int, q) -> Exact:
    """deg(chi^{1,hook d}) times its value (-1)^d on a regular elliptic element."""
    return (-1) ** d * q ** binom2(d + 1) * qbin(n - 1, d, q)


def assemble_F(n: int, k: int, q=None) -> XSeries:
    """F/|G|^(k-1) in the falling basis, summed over the hook characters.

    Every other character contributes through the regular-representation
    identity as a single correction on the (n, ..., n) coefficient.
    """
    q = as_q(q)
    if k < 1:
        raise ValueError("need at least one factor")
    hooks = [f_hook(n, d, q).normalized for d in range(n)]
    weights = [hook_weight(n, d, q) for d in range(n)]
    top = (n,) * k
    terms = {}
    for p in product(range(n + 1), repeat=k):
        val = 0 * q
        # hooks[d][x] vanishes for x < d, except at x = n
        for d in range(min((x for x in p if x < n), default=n - 1) + 1):
            term = weights[d]
            for x in p:
                term = term * hooks[d][x]
                if term == 0:
                    break
            val = val + term
        if p == top:
            val = val - qpoch_q(n - 1, q)
        if val != 0:
            terms[p] = val
    return XSeries(k, n, FALLING, terms, q)


def closed_form_F(n: int, k: int, q=None) -> XSeries:
    """F/|G|^(k-1) in the falling basis from the closed-form coefficients."""
    q = as_q(q)
    terms = {}
    for p in product(range(n + 1), repeat=k):
        val = b_two(n, p[0], p[1], q) if k == 2 else b_multi(n, p, q)
        if val != 0:
            terms[p] = val
    return XSeries(k, n, FALLING, terms, q)


def _q_label(q):
    return "sym" if is_symbolic(q) else int(q)


def _exact_count(v, symbolic: bool):
    if symbolic:
        if not v.is_poly():
            raise ArithmeticError(f"count {v} is not a polynomial in q")
        return v
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ArithmeticError(f"count {v} is not an integer")
        return int(v)
    return v


def series_to_table(series: XSeries) -> CountTable:
    q = series.q
    scale = gl_order(series.rank, q) ** (series.arity - 1)
    mono = series.to_monomial()
    sym = is_symbolic(q)
    entries = {vec: _exact_count(c * scale, sym) for vec, c in mono.terms.items()}
    return CountTable(series.arity, series.rank, _q_label(q), entries)


def a_table(n: int, k: int, q=None, method: str = "closed") -> CountTable:
    """Counts a_{r_1..r_k}(q) of factorizations c = u_1 ... u_k by fixed dimensions."""
    q = as_q(q)
    if method == "closed":
        series = closed_form_F(n, k, q)
    elif method == "charsum":
        series = assemble_F(n, k, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    return series_to_table(series)


def fulman_series(n: int, q=None) -> list:
    """N_r = number of elements of GL_n(F_q) with fixed space dimension r."""
    q = as_q(q)
    C = falling_to_monomial(n, q)
    g = gl_order(n, q)
    sym = is_symbolic(q)
    out = []
    for r in range(n + 1):
        acc = 0 * q
        for t in range(r, n + 1):
            acc = acc + C[t][r]
        out.append(_exact_count(acc * g, sym))
    return out


def expected_genus(n: int, q=None) -> Exact:
    """Mean genus n - r - s over all two-factor factorizations."""
    q = as_q(q)
    acc = 0 * q
    for t in range(1, n + 1):
        acc = acc + Fraction((-1) ** t) / (q ** binom2(t) * (1 - q ** t))
    return n - 2 * acc


def expected_genus_from_table(table: CountTable, q=None) -> Exact:
    q = as_q(q)
    n = table.n
    acc = 0 * q
    for (r, s), v in table.items():
        acc = acc + (n - r - s) * v
    return acc / gl_order(n, q)
