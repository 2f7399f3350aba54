"""Exact arithmetic in Q(A): Laurent polynomials, reduced quotients, truncated series.

Everything here is exact.  Coefficients are Python ints where possible and
:class:`fractions.Fraction` otherwise; no floating point is ever produced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DegreeError, OrderError

Rational = Union[int, Fraction]

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "TruncatedSeries",
    "A",
    "add",
    "mul",
    "min_degree",
    "series_expand",
    "dot_eq_n",
    "delta",
    "circle_value",
    "parse_poly",
    "format_poly",
    "format_series",
]


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``A`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = _clean(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees: int keys, nonzero clean coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "LaurentPoly":
        return cls._raw({k: _clean(c)} if c else {})

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational], low: int = 0) -> "LaurentPoly":
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, k: int) -> Rational:
        return self._terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise DegreeError("degree of zero undefined")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise DegreeError("degree of zero undefined")
        return max(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def dense(self) -> tuple[int, list]:
        """Return ``(low, coeffs)`` with consecutive coefficients from the lowest degree."""
        if not self._terms:
            return 0, []
        lo, hi = min(self._terms), max(self._terms)
        return lo, [self._terms.get(k, 0) for k in range(lo, hi + 1)]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _clean(v)
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({k: _clean(c * other) for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: _clean(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (k, c), = self._terms.items()
            return LaurentPoly.monomial(k * e, Fraction(1) / Fraction(c) ** (-e))
        result = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale_exponents(self, m: int) -> "LaurentPoly":
        """Substitute ``A -> A**m``."""
        return LaurentPoly._raw({e * m: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute ``A -> 1/A``."""
        return self.scale_exponents(-1)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide exactly; raise ``ValueError`` if ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (k, c), = other._terms.items()
            return LaurentPoly._raw({e - k: _clean(Fraction(v) / c) for e, v in self._terms.items()})
        lo_n, n = self.dense()
        lo_d, d = other.dense()
        q, r = _poly_divmod(n, d)
        if any(r):
            raise ValueError("inexact polynomial division")
        return LaurentPoly.from_coeffs(q, lo_n - lo_d)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)

    def l1_norm(self) -> Rational:
        return sum(abs(c) for c in self._terms.values())


A = LaurentPoly.monomial(1)


# -- dense polynomial helpers over Q (ascending coefficient lists) ----------

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(n: list, d: list) -> tuple[list, list]:
    n = [Fraction(c) for c in n]
    d = _trim(list(d))
    if not d:
        raise ZeroDivisionError
    _trim(n)
    if len(n) < len(d):
        return [], n
    lead = Fraction(d[-1])
    q = [Fraction(0)] * (len(n) - len(d) + 1)
    for i in range(len(n) - len(d), -1, -1):
        c = n[i + len(d) - 1] / lead
        q[i] = c
        if c:
            for j, dj in enumerate(d):
                n[i + j] -= c * dj
    return [_clean(c) for c in q], [_clean(c) for c in _trim(n[: len(d) - 1])]


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd over Q of two ascending coefficient lists."""
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, [Fraction(c) for c in r]
    if not a:
        return [1]
    lead = a[-1]
    return [_clean(c / lead) for c in a]


def _content(p: list) -> Fraction:
    from math import gcd, lcm

    num = 0
    den = 1
    for c in p:
        c = Fraction(c)
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator)
    return Fraction(num, den)


class RationalFn:
    """Quotient of Laurent polynomials, kept in a canonical reduced form.

    The stored denominator has lowest degree 0 and constant term 1; any power
    of ``A`` and all scalar factors live in the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _as_poly(num)
        den = LaurentPoly.const(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is zero")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p) -> "RationalFn":
        return cls(_as_poly(p), LaurentPoly.const(1), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == 1

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def min_degree(self) -> int:
        if self.num.is_zero():
            raise DegreeError("degree of zero undefined")
        return self.num.min_degree() - self.den.min_degree()

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.den == 1 and other.den == 1:
            return RationalFn(self.num * other.num, _reduced=True)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_rat(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFn(self.num ** e, self.den ** e, _reduced=True)

    def __eq__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _as_rat(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RationalFn.from_poly(x)
    return None


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, LaurentPoly.const(1)
    lo_n, n = num.dense()
    lo_d, d = den.dense()
    if len(d) > 1 and len(n) > 0:
        g = _poly_gcd(n, d)
        if len(g) > 1:
            n, _ = _poly_divmod(n, g)
            d, _ = _poly_divmod(d, g)
    lead = Fraction(d[0])
    n = [Fraction(c) / lead for c in n]
    d = [Fraction(c) / lead for c in d]
    return LaurentPoly.from_coeffs(n, lo_n - lo_d), LaurentPoly.from_coeffs(d, 0)


# -- operations -------------------------------------------------------------

def add(a, b):
    return a + b


def mul(a, b):
    return _as_rat(a) * _as_rat(b)


def min_degree(f) -> int:
    """Lowest exponent of the Laurent expansion of ``f`` around ``A = 0``."""
    if isinstance(f, LaurentPoly):
        return f.min_degree()
    return _as_rat(f).min_degree()


def delta(n: int) -> LaurentPoly:
    """Value of the closed ``n``-colored unknot, ``(-1)^n [n+1]`` in ``A``.  ``delta(-1) == 0``."""
    if n < -1:
        raise ValueError(f"delta(n) requires n >= -1, got {n}")
    sign = -1 if n % 2 else 1
    return LaurentPoly._raw({2 * n - 4 * k: sign for k in range(n + 1)})


def circle_value() -> LaurentPoly:
    return delta(1)


@dataclass(frozen=True)
class TruncatedSeries:
    """First ``order`` coefficients of a Laurent series.

    ``coeffs[i]`` multiplies ``x**(shift + i)`` for ``variable == "A"``.  For
    ``variable == "q"`` the shift is in units of ``q**(1/4)`` and ``coeffs[i]``
    multiplies ``q**(shift/4 + i)``.
    """

    variable: str
    shift: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.variable not in ("A", "q"):
            raise ValueError("variable must be 'A' or 'q'")
        if len(self.coeffs) != self.order:
            raise ValueError("order must equal the number of stored coefficients")
        if self.coeffs and not self.coeffs[0] and any(self.coeffs):
            raise ValueError("leading stored coefficient must be nonzero")

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int, variable: str = "A", step: int = 1) -> "TruncatedSeries":
        """Series of an exact polynomial; coefficients past its top degree are genuine zeros.

        ``step`` is the exponent spacing between consecutive coefficients (4 for
        q-series stored in quarter units).
        """
        if p.is_zero():
            return cls(variable, 0, (0,) * order, order)
        lo = p.min_degree()
        coeffs = tuple(p.coeff(lo + step * i) for i in range(order))
        return cls(variable, lo, coeffs, order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> tuple:
        """Coefficients after shifting the lowest term to exponent 0 and making it positive."""
        if self.is_zero():
            return self.coeffs
        sign = 1 if self.coeffs[0] > 0 else -1
        return tuple(sign * c for c in self.coeffs)

    def truncate(self, k: int) -> "TruncatedSeries":
        if k > self.order:
            raise OrderError("order too low for comparison")
        return TruncatedSeries(self.variable, self.shift, self.coeffs[:k], k)

    def __str__(self):
        return format_series(self.coeffs, self.variable if self.variable == "A" else "q", self.shift if self.variable == "A" else 0)


def series_expand(f, order: int) -> TruncatedSeries:
    """First ``order`` coefficients of the Laurent expansion of ``f`` at ``A = 0``."""
    f = _as_rat(f)
    if f.is_zero():
        return TruncatedSeries("A", 0, (0,) * order, order)
    lo_n, n = f.num.dense()
    lo_d, d = f.den.dense()
    d0 = Fraction(d[0])
    out = []
    for i in range(order):
        c = Fraction(n[i]) if i < len(n) else Fraction(0)
        for j in range(1, min(i, len(d) - 1) + 1):
            c -= d[j] * out[i - j]
        out.append(c / d0)
    return TruncatedSeries("A", lo_n - lo_d, tuple(_clean(c) for c in out), order)


def dot_eq_n(p1: TruncatedSeries, p2: TruncatedSeries, n: int) -> bool:
    """Equality up to a signed monomial factor, modulo the ``n``-th power of the variable."""
    if p1.variable != p2.variable:
        raise ValueError("series in different variables")
    if p1.order < n or p2.order < n:
        raise OrderError("order too low for comparison")
    if p1.is_zero() or p2.is_zero():
        raise DegreeError("degree of zero undefined")
    return p1.normalized()[:n] == p2.normalized()[:n]


# -- text form --------------------------------------------------------------

def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_terms(items, var: str) -> str:
    parts = []
    for k, c in items:
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_poly(p: LaurentPoly, var: str = "A") -> str:
    return _fmt_terms(sorted(p.items(), reverse=True), var)


def format_series(coeffs, var: str = "q", shift: int = 0, ellipsis: bool = True) -> str:
    """Ascending rendering, e.g. ``1 - 2q - q^2 + 2q^3 + ...``; zero terms are kept as ``0q^k``."""
    parts = []
    for i, c in enumerate(coeffs):
        k = shift + i
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        else:
            body = _fmt_coeff(mag) + mono
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    if ellipsis:
        parts.append("+ ...")
    return " ".join(parts)


_TERM = re.compile(
    r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(?:([A-Za-z])(?:\^\(?\s*(-?\d+)\s*\)?)?)?\s*"
)


def parse_poly(text: str, var: str = "A") -> LaurentPoly:
    """Parse the text form written by :func:`format_poly`."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    terms: dict = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, coef, sym, exp = m.groups()
        if not first and not sign:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        if coef is None and sym is None:
            raise ValueError(f"empty term near {s[pos:]!r}")
        if sym is not None and sym != var:
            raise ValueError(f"unexpected variable {sym!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        k = 0 if sym is None else (int(exp) if exp is not None else 1)
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)
