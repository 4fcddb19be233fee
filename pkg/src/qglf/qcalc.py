"""q-calculus primitives shared by every formula in the package.

Formula functions are written once and evaluated in one of two exact
domains, selected by the ``q`` argument:

* symbolic: ``q=None`` or ``q="sym"`` gives values as :class:`QRational`;
* numeric: an integer ``q`` gives :class:`fractions.Fraction` values.

``as_q`` turns either spelling into the domain generator that the formula
code then manipulates with ordinary ``+ - * / **``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from qglf.qpoly import ONE, QPoly, QRational

Exact = Union[Fraction, QRational]
SYM = "sym"


def as_q(q=None):
    """Domain generator for ``q``: ``QRational.q()`` or ``Fraction(q)``."""
    if q is None or q == SYM:
        return QRational.q()
    if isinstance(q, QRational):
        return q
    if isinstance(q, bool) or not isinstance(q, (int, Fraction)):
        raise TypeError(f"q must be an integer, a Fraction or 'sym', got {q!r}")
    return Fraction(q)


def is_symbolic(q) -> bool:
    return isinstance(q, QRational)


def one(q) -> Exact:
    return QRational(ONE) if is_symbolic(q) else Fraction(1)


def lift(p: QPoly, q) -> Exact:
    """Value of an integer Laurent polynomial in the domain of ``q``."""
    if is_symbolic(q):
        return QRational.from_poly(p)
    return Fraction(p(q))


def binom2(n: int) -> int:
    return n * (n - 1) // 2


# ---------------------------------------------------------------------------
# q-integers, q-factorials, q-binomials as integer polynomials


@lru_cache(maxsize=None)
def qint_poly(m: int) -> QPoly:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    return QPoly([1] * m)


@lru_cache(maxsize=None)
def qfactorial_poly(m: int) -> QPoly:
    if m < 0:
        raise ValueError("q-factorial of a negative integer")
    if m == 0:
        return ONE
    return qfactorial_poly(m - 1) * qint_poly(m)


@lru_cache(maxsize=None)
def qbinomial(n: int, k: int) -> QPoly:
    """Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return QPoly()
    if k == 0 or k == n:
        return ONE
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    return qbinomial(n - 1, k - 1) + qbinomial(n - 1, k).shift(k)


def qmultinomial(n: int, parts: Sequence[int]) -> QPoly:
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not form a composition of {n}")
    den = ONE
    for p in parts:
        den = den * qfactorial_poly(p)
    return qfactorial_poly(n).exact_div(den)


@lru_cache(maxsize=None)
def _qbin_cached(n: int, k: int, q) -> Exact:
    return lift(qbinomial(n, k), q)


def qbin(n: int, k: int, q) -> Exact:
    """Gaussian binomial as a domain element."""
    return _qbin_cached(n, k, q)


@lru_cache(maxsize=None)
def qfact(m: int, q) -> Exact:
    """[m]!_q as a domain element."""
    return lift(qfactorial_poly(m), q)


def qint(m: int, q) -> Exact:
    return lift(qint_poly(m), q)


@lru_cache(maxsize=None)
def qpoch_q(m: int, q) -> Exact:
    """(q; q)_m."""
    acc = one(q)
    for i in range(1, m + 1):
        acc = acc * (1 - q ** i)
    return acc


@lru_cache(maxsize=None)
def gl_order(n: int, q) -> Exact:
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i) in the domain of q."""
    acc = one(q)
    for i in range(n):
        acc = acc * (q ** n - q ** i)
    return acc


def gl_order_int(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# ---------------------------------------------------------------------------
# polynomials in a marker variable x with exact coefficients


class XPoly:
    """Univariate polynomial in the marker x with coefficients in an exact domain."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, q) -> XPoly:
        return cls((0 * one(q), one(q)))

    @classmethod
    def constant(cls, c) -> XPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other) -> XPoly:
        if not isinstance(other, XPoly):
            other = XPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> XPoly:
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> XPoly:
        if not isinstance(other, XPoly):
            other = XPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> XPoly:
        return (-self) + other

    def __mul__(self, other) -> XPoly:
        if not isinstance(other, XPoly):
            return XPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return XPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> XPoly:
        return XPoly([a / c for a in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale(self, c) -> XPoly:
        """The polynomial x -> f(c*x)."""
        out = []
        p = None
        for a in self.coeffs:
            p = 1 if p is None else p * c
            out.append(a * p)
        return XPoly(out)

    def shift_down(self, k: int) -> XPoly:
        """Divide by x**k; the k lowest coefficients must vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ArithmeticError(f"polynomial is not divisible by x^{k}")
        return XPoly(self.coeffs[k:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            other = XPoly((other,))
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return "XPoly(" + ", ".join(str(c) for c in self.coeffs) + ")"


def pochhammer(a, base, m: int):
    """(a; base)_m = prod_{i<m} (1 - a base^i).

    ``a`` may be a domain element or an :class:`XPoly` (the marker), in which
    case the result is a degree-m polynomial in the marker.
    """
    acc = XPoly((one(base),)) if isinstance(a, XPoly) else one(base)
    for i in range(m):
        acc = acc * (1 - a * base ** i)
    return acc


def falling_basis(t: int, q=None) -> XPoly:
    """B_t(x) = (x; 1/q)_t / (q; q)_t."""
    return _falling_basis(t, as_q(q))


@lru_cache(maxsize=None)
def _falling_basis(t: int, q) -> XPoly:
    return pochhammer(XPoly.x(q), 1 / q, t) / qpoch_q(t, q)


@lru_cache(maxsize=None)
def falling_to_monomial(n: int, q) -> tuple[tuple[Exact, ...], ...]:
    """Matrix C with B_t(x) = sum_r C[t][r] x^r, 0 <= r <= t <= n.

    Uses the closed q-binomial theorem expansion rather than multiplying
    out the product.
    """
    rows = []
    for t in range(n + 1):
        scale = 1 / (qpoch_q(t, q) * q ** binom2(t))
        rows.append(tuple(
            (-1) ** r * q ** binom2(t - r) * qbin(t, r, q) * scale if r <= t else 0 * scale
            for r in range(n + 1)
        ))
    return tuple(rows)


@lru_cache(maxsize=None)
def monomial_to_falling(n: int, q) -> tuple[tuple[Exact, ...], ...]:
    """Matrix D with x^k = sum_m D[k][m] B_m(x), 0 <= m <= k <= n."""
    rows = []
    for k in range(n + 1):
        qk = q ** k
        rows.append(tuple(
            (-1) ** m * q ** binom2(m) * pochhammer(qk, 1 / q, m) if m <= k else 0 * q
            for m in range(n + 1)
        ))
    return tuple(rows)


# ---------------------------------------------------------------------------
# terminating basic hypergeometric series


def _termination_index(a, q, limit: int = 4096) -> int | None:
    if is_symbolic(q):
        if a.is_monomial() and a.num.lc == 1 and a.den.lc == 1:
            e = a.num.val - a.den.val
            return -e if e <= 0 else None
        return None
    if a == 0:
        return None
    for t in range(limit):
        if a == q ** (-t):
            return t
    return None


def qhyper_terminating(numer: Sequence, denom: Sequence, z, q=None,
                       variant_exponent: int | None = None) -> Exact:
    """Finite sum of the terminating series r_phi_s(numer; denom; z).

    Each term is prod (a;q)_d / ((q;q)_d prod (b;q)_d) * ((-1)^d q^C(d,2))^e * z^d
    with e = 1 + s - r unless ``variant_exponent`` overrides it.
    """
    q = as_q(q)
    stops = [t for t in (_termination_index(a, q) for a in numer) if t is not None]
    if not stops:
        raise ValueError("no numerator parameter of the form q^-t; series does not terminate")
    top = min(stops)
    e = 1 + len(denom) - len(numer) if variant_exponent is None else variant_exponent
    total = 0 * q
    term = one(q)
    for d in range(top + 1):
        if d:
            ratio = z
            for a in numer:
                ratio = ratio * (1 - a * q ** (d - 1))
            for b in denom:
                ratio = ratio / (1 - b * q ** (d - 1))
            ratio = ratio / (1 - q ** d)
            if e:
                # ((-1)^d q^C(d,2))^e / ((-1)^(d-1) q^C(d-1,2))^e = (-q^(d-1))^e
                ratio = ratio * (-(q ** (d - 1))) ** e
            term = term * ratio
        total = total + term
    return total


# ---------------------------------------------------------------------------
# q-difference operator


def qdifference(f: XPoly, q) -> XPoly:
    """Delta_q f(x) = (f(qx) - f(x)) / ((q - 1) x); maps c x^k to c [k]_q x^(k-1)."""
    return XPoly([f[k] * qint(k, q) for k in range(1, len(f.coeffs))])


def qdifference_iter(f: XPoly, N: int, q=None) -> XPoly:
    q = as_q(q)
    for _ in range(N):
        f = qdifference(f, q)
    return f


def qdifference_closed(f: XPoly, N: int, q=None) -> XPoly:
    """Delta_q^N f via the alternating q-binomial sum over f(q^(N-d) x)."""
    q = as_q(q)
    acc = XPoly()
    for d in range(N + 1):
        acc = acc + f.scale(q ** (N - d)) * ((-1) ** d * q ** binom2(d) * qbin(N, d, q))
    return acc.shift_down(N) * (q ** (-binom2(N)) * (q - 1) ** (-N))


class MultiLaurent:
    """Laurent polynomial in named variables with exact coefficients.

    Terms map exponent tuples (one entry per variable) to nonzero coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        self.variables = tuple(variables)
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> MultiLaurent:
        e = tuple(power if v == name else 0 for v in variables)
        return cls(variables, {e: one(QRational.q())})

    def _same(self, other) -> MultiLaurent:
        if isinstance(other, MultiLaurent):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        zero = (0,) * len(self.variables)
        return MultiLaurent(self.variables, {zero: other})

    def __add__(self, other) -> MultiLaurent:
        other = self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiLaurent(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> MultiLaurent:
        return MultiLaurent(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiLaurent:
        return self + (-self._same(other))

    def __rsub__(self, other) -> MultiLaurent:
        return (-self) + other

    def __mul__(self, other) -> MultiLaurent:
        other = self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MultiLaurent(self.variables, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._same(other)
        return self.terms == other.terms

    def evaluate(self, values: Sequence, q=None):
        """Substitute domain values for the variables and numeric/symbolic q."""
        q = as_q(q)
        values = [Fraction(v) if isinstance(v, int) else v for v in values]
        total = 0 * q
        for e, c in self.terms.items():
            term = c(q) if not is_symbolic(q) else c
            for v, k in zip(values, e):
                term = term * v ** k
            total = total + term
        return total

    def max_weight_monomials(self, weights: Sequence[int]) -> tuple[int, list[tuple[int, ...]]]:
        best = None
        where: list[tuple[int, ...]] = []
        for e in self.terms:
            w = sum(a * b for a, b in zip(weights, e))
            if best is None or w > best:
                best, where = w, [e]
            elif w == best:
                where.append(e)
        return best, sorted(where)

    def __repr__(self) -> str:
        return "MultiLaurent(" + ", ".join(f"{e}: {c}" for e, c in sorted(self.terms.items())) + ")"
