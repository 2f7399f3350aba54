"""Ramanujan's two-variable theta function at monomial arguments, as truncated q-series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import OrderError
from .laurent import format_series

__all__ = ["MonomialSpec", "ThetaSeries", "theta", "series_product", "pentagonal"]


@dataclass(frozen=True)
class MonomialSpec:
    """``sign * q**exponent`` with ``exponent`` a nonnegative multiple of 1/2."""

    sign: int
    exponent: Fraction

    def __post_init__(self):
        e = Fraction(self.exponent)
        object.__setattr__(self, "exponent", e)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if 2 % e.denominator:
            raise ValueError(f"exponent {e} is not a multiple of 1/2")

    @classmethod
    def parse(cls, text: str) -> "MonomialSpec":
        """Read ``-q^2``, ``q``, ``-q^3/2`` and the like."""
        t = text.replace(" ", "")
        sign = 1
        if t.startswith(("-", "+")):
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        if not t.startswith("q"):
            raise ValueError(f"cannot read monomial {text!r}")
        rest = t[1:]
        if not rest:
            return cls(sign, Fraction(1))
        if not rest.startswith("^"):
            raise ValueError(f"cannot read monomial {text!r}")
        return cls(sign, Fraction(rest[1:].strip("()")))

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        e = self.exponent
        return f"{s}q" if e == 1 else f"{s}q^{e}"


@dataclass(frozen=True)
class ThetaSeries:
    coeffs: tuple
    order: int
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.order:
            raise ValueError("need exactly `order` coefficients")

    def truncate(self, order: int) -> "ThetaSeries":
        if order > self.order:
            raise OrderError("order too low for comparison")
        return ThetaSeries(self.coeffs[:order], order, self.label)

    def to_json(self) -> dict:
        return {"coefficients": list(self.coeffs), "order": self.order}

    def __str__(self):
        return format_series(self.coeffs)


def theta(a: MonomialSpec, b: MonomialSpec, order: int) -> ThetaSeries:
    """``f(a, b) = sum_n a^(n(n+1)/2) b^(n(n-1)/2)`` below ``q^order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    # exponent of the n-th term: c2 n^2 + c1 n
    c2 = (a.exponent + b.exponent) / 2
    c1 = (a.exponent - b.exponent) / 2
    if c2 <= 0:
        raise ValueError("theta specialization does not truncate: infinitely many terms at q^0")
    # c2 n^2 - |c1| |n| < order forces |n| below the positive root
    disc = c1 * c1 + 4 * c2 * order
    bound = int((abs(c1) + Fraction(isqrt(int(disc) + 1) + 1)) / (2 * c2)) + 1
    for n in (bound + 1, -bound - 1):
        if c2 * n * n + c1 * n < order:  # pragma: no cover - guards the bound above
            raise ArithmeticError("summation bound too small")
    coeffs = [0] * order
    for n in range(-bound, bound + 1):
        e = c2 * n * n + c1 * n
        if e >= order:
            continue
        if e.denominator != 1:
            raise ValueError(f"term n={n} has non-integral exponent {e}")
        s = a.sign ** ((n * (n + 1) // 2) % 2) * b.sign ** ((n * (n - 1) // 2) % 2)
        coeffs[int(e)] += s
    return ThetaSeries(tuple(coeffs), order, f"f({a},{b})")


def series_product(s1: ThetaSeries, s2: ThetaSeries, order: int) -> ThetaSeries:
    """Cauchy product below ``q^order``."""
    if order > s1.order or order > s2.order:
        raise OrderError("insufficient order for the product")
    out = [0] * order
    for i in range(order):
        ci = s1.coeffs[i]
        if ci:
            for j in range(order - i):
                out[i + j] += ci * s2.coeffs[j]
    return ThetaSeries(tuple(out), order, f"{s1.label}*{s2.label}")


def pentagonal(order: int) -> ThetaSeries:
    """Euler's series ``sum_n (-1)^n q^(n(3n+1)/2)`` built straight from its exponents."""
    coeffs = [0] * order
    n = 0
    while n * (3 * n - 1) // 2 < order or n * (3 * n + 1) // 2 < order:
        for m in {n, -n}:
            e = m * (3 * m + 1) // 2
            if e < order:
                coeffs[e] += -1 if m % 2 else 1
        n += 1
    return ThetaSeries(tuple(coeffs), order, "pentagonal")
