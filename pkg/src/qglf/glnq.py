"""Matrices and polynomials over a prime field F_q, and enumeration of GL_n(F_q).

Regular elliptic elements are identified by an irreducible characteristic
polynomial of degree n (for n = 1 the identity is excluded, since the
counting formulas need an element without fixed vectors).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

DEFAULT_BUDGET_BITS = 25


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def _check_field(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime; only prime fields are supported")


def group_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class MatrixFq:
    n: int
    q: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], q: int) -> MatrixFq:
        rows = tuple(tuple(x % q for x in r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        return cls(len(rows), q, rows)

    @classmethod
    def identity(cls, n: int, q: int) -> MatrixFq:
        return cls(n, q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        return MatrixFq(self.n, self.q, mat_mul(self.rows, other.rows, self.q))

    def __sub__(self, other: MatrixFq) -> MatrixFq:
        q = self.q
        return MatrixFq(self.n, q, tuple(
            tuple((a - b) % q for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def __pow__(self, e: int) -> MatrixFq:
        if e < 0:
            return self.inverse() ** (-e)
        result = MatrixFq.identity(self.n, self.q)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def rank(self) -> int:
        return rank_mod(self.rows, self.q)

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> MatrixFq:
        n, q = self.n, self.q
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if aug[i][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(aug[col][col], -1, q)
            aug[col] = [x * inv % q for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[col])]
        return MatrixFq(n, q, tuple(tuple(r[n:]) for r in aug))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def mat_mul(a, b, q: int):
    cols = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % q for col in cols) for row in a
    )


def rank_mod(rows, q: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % q), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, q)
        prow = [x * inv % q for x in m[rank]]
        m[rank] = prow
        for i in range(rank + 1, len(m)):
            f = m[i][col] % q
            if f:
                m[i] = [(a - f * b) % q for a, b in zip(m[i], prow)]
        rank += 1
    return rank


def fixed_dim(m: MatrixFq) -> int:
    """Dimension of ker(m - 1)."""
    return m.n - (m - MatrixFq.identity(m.n, m.q)).rank()


# ---------------------------------------------------------------------------
# enumeration


def check_budget(n: int, q: int, budget_bits: float = DEFAULT_BUDGET_BITS) -> None:
    bits = n * n * math.log2(q)
    if bits > budget_bits:
        raise BudgetExceeded(
            f"GL_{n}(F_{q}) enumeration needs {bits:.1f} bits > budget {budget_bits}"
        )


def _row_space_add(basis: list[tuple[int, list[int]]], row, q: int):
    """Reduce ``row`` against an echelon basis; return the reduced row or None."""
    v = list(row)
    for pivot, b in basis:
        c = v[pivot]
        if c:
            v = [(x - c * y) % q for x, y in zip(v, b)]
    lead = next((i for i, x in enumerate(v) if x), None)
    if lead is None:
        return None
    inv = pow(v[lead], -1, q)
    return lead, [x * inv % q for x in v]


def _extend(prefix: list, basis: list, n: int, q: int, vectors) -> Iterator[tuple]:
    if len(prefix) == n:
        yield tuple(prefix)
        return
    for row in vectors:
        red = _row_space_add(basis, row, q)
        if red is None:
            continue
        lead, v = red
        # keep the basis fully reduced on pivot columns
        new_basis = [(p, [(x - b[lead] * y) % q for x, y in zip(b, v)]) for p, b in basis]
        new_basis.append((lead, v))
        prefix.append(row)
        yield from _extend(prefix, new_basis, n, q, vectors)
        prefix.pop()


def enumerate_gl(n: int, q: int, budget_bits: float = DEFAULT_BUDGET_BITS,
                 first_row: Sequence[int] | None = None) -> Iterator[MatrixFq]:
    """Every invertible n x n matrix over F_q once, in row-major lexicographic order.

    ``first_row`` restricts the stream to one shard (matrices with that first row).
    """
    _check_field(q)
    check_budget(n, q, budget_bits)
    vectors = list(product(range(q), repeat=n))
    if first_row is None:
        for rows in _extend([], [], n, q, vectors):
            yield MatrixFq(n, q, rows)
        return
    first = tuple(x % q for x in first_row)
    red = _row_space_add([], first, q)
    if red is None:
        return
    for rows in _extend([first], [red], n, q, vectors):
        yield MatrixFq(n, q, rows)


def shard_rows(n: int, q: int) -> list[tuple[int, ...]]:
    """Nonzero first rows, one per enumeration shard, in enumeration order."""
    return [v for v in product(range(q), repeat=n) if any(v)]


# ---------------------------------------------------------------------------
# polynomials over F_q


@dataclass(frozen=True)
class PolyFq:
    """Polynomial over F_q, coefficients low degree first, no trailing zeros."""

    q: int
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Sequence[int], q: int) -> PolyFq:
        c = [x % q for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(q, tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: PolyFq) -> PolyFq:
        if not self.coeffs or not other.coeffs:
            return PolyFq(self.q, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyFq.of(out, self.q)

    def __mod__(self, other: PolyFq) -> PolyFq:
        return self.divmod(other)[1]

    def divmod(self, other: PolyFq) -> tuple[PolyFq, PolyFq]:
        q = self.q
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        inv = pow(other.coeffs[-1], -1, q)
        dg = other.degree
        quo = [0] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k] * inv % q
            if c:
                quo[k - dg] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - dg + i] = (rem[k - dg + i] - c * b) % q
        return PolyFq.of(quo, q), PolyFq.of(rem[:dg], q)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def has_root(self) -> bool:
        return any(self(a) == 0 for a in range(self.q))

    def is_irreducible(self) -> bool:
        """Trial division by every monic polynomial of degree 1 .. deg/2."""
        d = self.degree
        if d < 1:
            return False
        if d == 1:
            return True
        if self.has_root():
            return False
        for k in range(2, d // 2 + 1):
            for low in product(range(self.q), repeat=k):
                if not (self % PolyFq(self.q, low + (1,))).coeffs:
                    return False
        return True

    def __str__(self) -> str:
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def monic_polys(n: int, q: int) -> Iterator[PolyFq]:
    """Monic degree-n polynomials, constant coefficient varying fastest."""
    for code in range(q ** n):
        low = []
        for _ in range(n):
            code, r = divmod(code, q)
            low.append(r)
        yield PolyFq(q, tuple(low) + (1,))


def count_irreducible(n: int, q: int) -> int:
    """Number of monic irreducibles of degree n, by the necklace formula."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * q ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def char_poly(m: MatrixFq) -> PolyFq:
    """Monic characteristic polynomial via the Faddeev-LeVerrier recursion over Z."""
    n = m.n
    a = [list(r) for r in m.rows]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I, with M_0 = 0
        c_prev = coeffs[n - k + 1]
        prod_ = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod_[i][i] += c_prev
        mk = prod_
        am = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        c = Fraction(-tr, k)
        if c.denominator != 1:
            raise ArithmeticError("non-integral Faddeev-LeVerrier coefficient")
        coeffs[n - k] = int(c)
    return PolyFq.of(coeffs, m.q)


def companion(poly: PolyFq) -> MatrixFq:
    """Companion matrix: ones on the subdiagonal, last column -a_0, ..., -a_(n-1)."""
    if not poly.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n, q = poly.degree, poly.q
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -poly.coeffs[i] % q
    return MatrixFq(n, q, tuple(tuple(r) for r in rows))


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def multiplicative_order(m: MatrixFq, bound: int) -> int | None:
    """Order of m if it divides ``bound``, else None."""
    one = MatrixFq.identity(m.n, m.q)
    if m ** bound != one:
        return None
    order = bound
    for p in _prime_factors(bound):
        while order % p == 0 and m ** (order // p) == one:
            order //= p
    return order


def is_regular_elliptic(m: MatrixFq) -> bool:
    if m.n == 1:
        return m.rows[0][0] not in (0, 1)
    return char_poly(m).is_irreducible()


def is_singer(m: MatrixFq) -> bool:
    top = m.q ** m.n - 1
    return is_regular_elliptic(m) and multiplicative_order(m, top) == top


@lru_cache(maxsize=None)
def find_regular_elliptic(n: int, q: int, want_singer: bool = False) -> MatrixFq:
    """Companion matrix of the first suitable irreducible monic polynomial of degree n."""
    _check_field(q)
    for poly in monic_polys(n, q):
        if n == 1 and poly.coeffs[0] in (0, q - 1):
            continue  # x and x - 1 give the zero matrix and the identity
        if not poly.is_irreducible():
            continue
        c = companion(poly)
        if want_singer and not is_singer(c):
            continue
        return c
    raise LookupError(f"no regular elliptic element found for n={n}, q={q}")


def regular_elliptic_elements(n: int, q: int, budget_bits: float = DEFAULT_BUDGET_BITS):
    """All regular elliptic elements, by enumeration."""
    return [m for m in enumerate_gl(n, q, budget_bits) if is_regular_elliptic(m)]
