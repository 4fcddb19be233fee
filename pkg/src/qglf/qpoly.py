"""Exact Laurent polynomials and rational functions in a single variable q.

``QPoly`` stores integer coefficients densely, starting at the lowest
nonzero exponent (which may be negative).  ``QRational`` is a reduced
quotient of two integer polynomials; its canonical form makes equality
structural:

* numerator and denominator have nonnegative exponents and no common
  factor in Q[q] (this includes powers of q);
* the integer contents of numerator and denominator are coprime;
* the denominator has a positive leading coefficient.

Both types are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


def _trim(coeffs: list[int], val: int) -> tuple[tuple[int, ...], int]:
    lo = 0
    hi = len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return (), 0
    return tuple(coeffs[lo:hi]), val + lo


class QPoly:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("coeffs", "val", "_hash")

    def __init__(self, coeffs: Iterable[int] = (), val: int = 0):
        c, v = _trim(list(coeffs), val)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "val", v)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...], val: int) -> QPoly:
        # coeffs must already be trimmed at both ends
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        object.__setattr__(p, "val", val if coeffs else 0)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> QPoly:
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> QPoly:
        return cls._raw((coeff,), exponent) if coeff else ZERO

    @classmethod
    def const(cls, c: int) -> QPoly:
        return cls.monomial(0, c)

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Highest exponent; -1 for the zero polynomial."""
        return self.val + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_laurent(self) -> bool:
        return bool(self.coeffs) and self.val < 0

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_const(self) -> bool:
        return not self.coeffs or (len(self.coeffs) == 1 and self.val == 0)

    def terms(self) -> dict[int, int]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def __getitem__(self, exponent: int) -> int:
        i = exponent - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> QPoly:
        return QPoly._raw(tuple(-c for c in self.coeffs), self.val)

    def __add__(self, other) -> QPoly:
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.val, other.val)
        hi = max(self.degree, other.degree)
        out = [0] * (hi - lo + 1)
        off = self.val - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] += c
        off = other.val - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return QPoly(out, lo)

    __radd__ = __add__

    def __sub__(self, other) -> QPoly:
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QPoly:
        return (-self) + other

    def __mul__(self, other) -> QPoly:
        if isinstance(other, int):
            if not other:
                return ZERO
            return QPoly._raw(tuple(c * other for c in self.coeffs), self.val)
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        return QPoly._raw(_mul_dense(self.coeffs, other.coeffs), self.val + other.val)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPoly:
        if e < 0:
            if self.is_monomial() and abs(self.coeffs[0]) == 1:
                return QPoly.monomial(self.val * e, self.coeffs[0] ** (-e))
            raise ValueError("negative power of a non-unit QPoly")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> QPoly:
        """Multiply by q**k."""
        return QPoly._raw(self.coeffs, self.val + k) if self.coeffs else ZERO

    def exact_div(self, other: QPoly) -> QPoly:
        """Quotient self/other in Z[q, 1/q]; raises ArithmeticError if inexact."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        quo = _divexact(self.coeffs, other.coeffs)
        if quo is None:
            raise ArithmeticError("polynomial division is not exact")
        return QPoly(quo, self.val - other.val)

    def divides(self, other: QPoly) -> bool:
        return _divexact(other.coeffs, self.coeffs) is not None

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        """Evaluate at a number (int, Fraction) or any ring element."""
        if isinstance(x, int) and self.val < 0:
            x = Fraction(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x ** self.val if self.val else acc

    def at_one(self) -> int:
        return sum(self.coeffs)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.val == other.val and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ()) and (not other or self.val == 0)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.coeffs, self.val)) if not self.is_const() else hash(self.lc)
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        return render_poly(self)


def render_poly(p: QPoly, var: str = "q") -> str:
    """Canonical text: descending exponents, ``c*q^k`` terms, ``q^-k`` for Laurent."""
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        e = p.val + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


ZERO = QPoly._raw((), 0)
ONE = QPoly._raw((1,), 0)
Q = QPoly._raw((1,), 1)


# ---------------------------------------------------------------------------
# dense integer polynomial kernels (coefficient lists, low degree first)


def _mul_dense(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        c = b[0]
        return tuple(x * c for x in a)
    if len(b) > 24:
        return _mul_kronecker(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return tuple(out)


def _mul_kronecker(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # pack into one big integer; bound each output coefficient by |a|*|b|*len
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    pa = _pack(a, bits)
    pb = _pack(b, bits)
    return _unpack(pa * pb, bits, len(a) + len(b) - 1)


def _pack(coeffs: tuple[int, ...], bits: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << bits) + c
    return acc


def _unpack(value: int, bits: int, length: int) -> tuple[int, ...]:
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(length):
        d = value & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        value = (value - d) >> bits
    return tuple(out)


def _divexact(f: tuple[int, ...], g: tuple[int, ...]) -> list[int] | None:
    """Exact quotient of dense integer polynomials, or None."""
    if not f:
        return []
    if len(g) > len(f):
        return None
    rem = list(f)
    lg = g[-1]
    dg = len(g) - 1
    quo = [0] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = rem[k]
        if not c:
            continue
        t, r = divmod(c, lg)
        if r:
            return None
        quo[k - dg] = t
        base = k - dg
        for i in range(dg + 1):
            rem[base + i] -= t * g[i]
    if any(rem[:dg]):
        return None
    return quo


def _primitive(f: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for c in f:
        g = gcd(g, c)
    if f and f[-1] < 0:
        g = -g
    return tuple(c // g for c in f) if g not in (0, 1) else tuple(f)


def _eval_int(f: tuple[int, ...], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _interpolate(h: int, x: int) -> list[int]:
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return out


def _gcd_heuristic(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...] | None:
    fn = max(map(abs, f))
    gn = max(map(abs, g))
    x = 2 * min(fn, gn) + 29
    for _ in range(8):
        h = gcd(_eval_int(f, x), _eval_int(g, x))
        if h:
            cand = _primitive(_interpolate(h, x))
            if cand and _divexact(f, cand) is not None and _divexact(g, cand) is not None:
                return cand
        x = x * 73794 // 27011 + 7
    return None


def _prem(f: list[int], g: tuple[int, ...]) -> list[int]:
    rem = list(f)
    lg = g[-1]
    dg = len(g) - 1
    while len(rem) - 1 >= dg and rem:
        c = rem[-1]
        shift = len(rem) - 1 - dg
        rem = [lg * r for r in rem]
        for i in range(dg + 1):
            rem[shift + i] -= c * g[i]
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _gcd_prs(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    a, b = _primitive(f), _primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(list(a), b)
        a, b = b, (_primitive(r) if r else ())
    if not b:
        return _primitive(a)
    return (1,)


def poly_gcd_primitive(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """Primitive gcd (positive leading coefficient) of two nonzero dense polynomials.

    Both inputs are assumed to have nonzero constant term, so no power of q
    is shared.
    """
    if len(f) == 1 or len(g) == 1:
        return (1,)
    pf, pg = _primitive(f), _primitive(g)
    if pf == pg:
        return pf
    h = _gcd_heuristic(pf, pg)
    if h is None:
        h = _gcd_prs(pf, pg)
    return h


# ---------------------------------------------------------------------------


class QRational:
    """Reduced rational function num/den in q with integer coefficients."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _as_qpoly(num)
        den = ONE if den is None else _as_qpoly(den)
        if not den:
            raise ZeroDivisionError("QRational with zero denominator")
        n, d = _canonical(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QRational is immutable")

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> QRational:
        r = object.__new__(cls)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den)
        object.__setattr__(r, "_hash", None)
        return r

    @classmethod
    def q(cls) -> QRational:
        return _Q_RAT

    @classmethod
    def from_poly(cls, p: QPoly) -> QRational:
        if not p.coeffs:
            return _ZERO_RAT
        if p.val >= 0:
            return cls._raw(p, ONE)
        return cls._raw(p.shift(-p.val), QPoly.monomial(-p.val))

    # -- predicates --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den == ONE

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial c*q^j with c = 1."""
        return self.den.is_monomial() and self.den.coeffs[0] == 1

    def as_laurent(self) -> QPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num.shift(-self.den.val)

    def as_poly(self) -> QPoly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def is_monomial(self) -> bool:
        return self.num.is_monomial() and self.is_laurent()

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> QRational:
        return QRational._raw(-self.num, self.den)

    def __add__(self, other) -> QRational:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return QRational.from_poly(self.num + other.num)
            return QRational(self.num + other.num, self.den)
        if self.den == ONE:
            return QRational(self.num * other.den + other.num, other.den)
        if other.den == ONE:
            return QRational(other.num * self.den + self.num, self.den)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> QRational:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> QRational:
        return (-self) + other

    def __mul__(self, other) -> QRational:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return _ZERO_RAT
        if self.den == ONE and other.den == ONE:
            return QRational._raw(self.num * other.num, ONE)
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QRational:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("QRational division by zero")
        return self * QRational._raw_inverse(other)

    def __rtruediv__(self, other) -> QRational:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    @staticmethod
    def _raw_inverse(r: QRational) -> QRational:
        num, den = r.den, r.num
        if den.lc < 0:
            num, den = -num, -den
        return QRational._raw(num, den)

    def __pow__(self, e: int) -> QRational:
        if e < 0:
            return QRational._raw_inverse(self) ** (-e)
        # powers of a reduced fraction stay reduced
        return QRational._raw(self.num ** e, self.den ** e)

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        """Evaluate at a number; exact for int/Fraction inputs."""
        x = Fraction(x)
        d = _eval_exact(self.den, x)
        if not d:
            raise ZeroDivisionError(f"denominator of {self} vanishes at q={x}")
        return _eval_exact(self.num, x) / d

    def limit_q1(self) -> Fraction:
        """Limit as q -> 1; the canonical form has already cancelled (q - 1)."""
        d = self.den.at_one()
        if not d:
            raise ZeroDivisionError(f"{self} has a pole at q = 1")
        return Fraction(self.num.at_one(), d)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, QPoly)):
            return self == _coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if self.num.is_const() and self.den.is_const():
                h = hash(Fraction(self.num.lc, self.den.lc))
            else:
                h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"QRational({self})"

    def __str__(self) -> str:
        if self.den == ONE:
            return render_poly(self.num)
        return f"({render_poly(self.num)})/({render_poly(self.den)})"


def _as_qpoly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a QPoly")


def _coerce(x):
    if isinstance(x, QRational):
        return x
    if isinstance(x, int):
        return QRational._raw(QPoly.const(x), ONE)
    if isinstance(x, Fraction):
        return QRational(QPoly.const(x.numerator), QPoly.const(x.denominator))
    if isinstance(x, QPoly):
        return QRational.from_poly(x)
    return NotImplemented


def _eval_exact(p: QPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc * x ** p.val if p.val else acc


def _canonical(num: QPoly, den: QPoly) -> tuple[QPoly, QPoly]:
    if not num:
        return ZERO, ONE
    e = num.val - den.val
    nc, dc = num.coeffs, den.coeffs
    g = poly_gcd_primitive(nc, dc)
    if g != (1,):
        nc = tuple(_divexact(nc, g))
        dc = tuple(_divexact(dc, g))
    return _finish(nc, dc, e)


def _finish(nc: tuple[int, ...], dc: tuple[int, ...], e: int) -> tuple[QPoly, QPoly]:
    cn = 0
    for c in nc:
        cn = gcd(cn, c)
    cd = 0
    for c in dc:
        cd = gcd(cd, c)
    c = gcd(cn, cd)
    if dc[-1] < 0:
        c = -c
    if c != 1:
        nc = tuple(x // c for x in nc)
        dc = tuple(x // c for x in dc)
    if e >= 0:
        return QPoly._raw(nc, e), QPoly._raw(dc, 0)
    return QPoly._raw(nc, 0), QPoly._raw(dc, -e)


_ZERO_RAT = QRational._raw(ZERO, ONE)
_Q_RAT = QRational._raw(Q, ONE)


def parse_poly(text: str, var: str = "q") -> QPoly:
    """Parse the canonical rendering produced by :func:`render_poly`."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return ZERO
    terms: dict[int, int] = {}
    i = 0
    while i < len(text):
        sign = 1
        if text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i += 1
        j = i
        while j < len(text) and text[j] not in "+-":
            if text[j] == "^" and j + 1 < len(text) and text[j + 1] == "-":
                j += 2
                continue
            j += 1
        tok = text[i:j]
        i = j
        if var in tok:
            coef_s, _, pow_s = tok.partition(var)
            coef = int(coef_s.rstrip("*")) if coef_s.rstrip("*") else 1
            exp = int(pow_s[1:]) if pow_s else 1
        else:
            coef, exp = int(tok), 0
        terms[exp] = terms.get(exp, 0) + sign * coef
    return QPoly.from_dict(terms)


def parse_rational(text: str) -> QRational:
    text = text.strip()
    if text.startswith("(") and ")/(" in text:
        num_s, den_s = text[1:-1].split(")/(")
        return QRational(parse_poly(num_s), parse_poly(den_s))
    return QRational.from_poly(parse_poly(text))
