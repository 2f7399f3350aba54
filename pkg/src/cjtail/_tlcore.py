"""Crossingless matchings, Temperley-Lieb products and Jones-Wenzl idempotents.

Points ``0 .. n-1`` are the bottom of the rectangle read left to right and
``n .. 2n-1`` the top read left to right.  A matching is a tuple ``p`` with
``p[p[i]] == i``.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from fractions import Fraction
from math import comb, gcd

from .errors import ResourceError
from .laurent import LaurentPoly, RationalFn, _poly_gcd, _poly_divmod, delta

N_MAX = 8


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def boundary_cycle(n: int) -> list:
    """Points in counterclockwise order around the rectangle: bottom left to right, top right to left."""
    return list(range(n)) + list(range(2 * n - 1, n - 1, -1))


def is_noncrossing(p: tuple) -> bool:
    n2 = len(p)
    if n2 % 2:
        return False
    cyc = boundary_cycle(n2 // 2)
    where = {pt: k for k, pt in enumerate(cyc)}
    stack = []
    for pt in cyc:
        q = p[pt]
        if q == pt or p[q] != pt:
            return False
        if where[q] > where[pt]:
            stack.append(pt)
        else:
            if not stack or stack[-1] != q:
                return False
            stack.pop()
    return not stack


def to_parens(p: tuple) -> str:
    cyc = boundary_cycle(len(p) // 2)
    where = {pt: k for k, pt in enumerate(cyc)}
    return "".join("(" if where[p[pt]] > where[pt] else ")" for pt in cyc)


def from_parens(s: str) -> tuple:
    if len(s) % 2:
        raise ValueError("odd-length nesting string")
    cyc = boundary_cycle(len(s) // 2)
    p = [0] * len(s)
    stack = []
    for ch, pt in zip(s, cyc):
        if ch == "(":
            stack.append(pt)
        elif ch == ")":
            if not stack:
                raise ValueError(f"unbalanced nesting string {s!r}")
            q = stack.pop()
            p[pt], p[q] = q, pt
        else:
            raise ValueError(f"bad character {ch!r} in nesting string")
    if stack:
        raise ValueError(f"unbalanced nesting string {s!r}")
    return tuple(p)


@lru_cache(maxsize=None)
def all_matchings(n: int) -> tuple:
    """Every crossingless matching of ``TLM_n``, sorted by nesting string."""
    out = []

    def gen(prefix, opened, closed):
        if closed == n:
            out.append("".join(prefix))
            return
        if opened < n:
            prefix.append("(")
            gen(prefix, opened + 1, closed)
            prefix.pop()
        if closed < opened:
            prefix.append(")")
            gen(prefix, opened, closed + 1)
            prefix.pop()

    gen([], 0, 0)
    return tuple(from_parens(s) for s in sorted(out))


def identity(n: int) -> tuple:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def hook(n: int, i: int) -> tuple:
    """The generator ``e_i`` (1-based) joining bottom points ``i-1, i`` and top points ``i-1, i``."""
    if not 1 <= i < n:
        raise ValueError(f"e_{i} is not a generator of TL_{n}")
    p = list(identity(n))
    a, b = i - 1, i
    p[a], p[b] = b, a
    p[n + a], p[n + b] = n + b, n + a
    return tuple(p)


@lru_cache(maxsize=1 << 18)
def compose(x: tuple, y: tuple) -> tuple:
    """Stack ``x`` on top of ``y``; return ``(matching, closed_circles)``."""
    n = len(x) // 2
    # nodes: y-points 0..2n-1, x-points 2n..4n-1; y top k is glued to x bottom k
    def partner(v):
        if v < 2 * n:
            return y[v]
        return 2 * n + x[v - 2 * n]

    def glue(v):
        if v < 2 * n:
            return 2 * n + (v - n) if v >= n else None
        w = v - 2 * n
        return n + w if w < n else None

    res = [0] * (2 * n)
    seen = set()
    ends = [(k, k) for k in range(n)] + [(n + k, 2 * n + n + k) for k in range(n)]
    for out_pt, v in ends:
        if v in seen:
            continue
        seen.add(v)
        u = partner(v)
        while True:
            seen.add(u)
            g = glue(u)
            if g is None:
                break
            seen.add(g)
            u = partner(g)
        other = u if u < n else u - 2 * n
        res[out_pt] = other
        res[other] = out_pt
    loops = 0
    for k in range(n):
        v = n + k  # y top point, glued
        if v in seen:
            continue
        loops += 1
        u = v
        while u not in seen:
            seen.add(u)
            g = glue(u)
            seen.add(g)
            u = partner(g)
    return tuple(res), loops


def tensor(x: tuple, y: tuple) -> tuple:
    """Place ``x`` to the left of ``y``."""
    n, m = len(x) // 2, len(y) // 2
    t = n + m

    def mx(v):  # x point -> combined point
        return v if v < n else t + (v - n)

    def my(v):
        return n + v if v < m else t + n + (v - m)

    res = [0] * (2 * t)
    for v in range(2 * n):
        res[mx(v)] = mx(x[v])
    for v in range(2 * m):
        res[my(v)] = my(y[v])
    return tuple(res)


# -- fraction-free Jones-Wenzl ------------------------------------------------

class _JW:
    """``f^(n)`` stored as integer Laurent numerators over a common denominator."""

    __slots__ = ("n", "den", "nums")

    def __init__(self, n, den, nums):
        self.n = n
        self.den = den
        self.nums = nums


_jw_lock = threading.Lock()
_jw_cache: dict = {}


def _dense_gcd_all(polys):
    g = None
    for p in polys:
        if p.is_zero():
            continue
        _, d = p.dense()
        g = d if g is None else _poly_gcd(g, d)
        if len(g) == 1:
            return [1]
    return g or [1]


def _mul_sum(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    d = delta(1)
    dpow = [LaurentPoly.const(1)]
    for x, cx in a.items():
        for y, cy in b.items():
            m, loops = compose(x, y)
            while len(dpow) <= loops:
                dpow.append(dpow[-1] * d)
            c = cx * cy * dpow[loops]
            out[m] = out.get(m, LaurentPoly()) + c
    return {m: c for m, c in out.items() if c}


def jw_fraction_free(n: int) -> _JW:
    """``f^(n)`` as ``(den, {matching: numerator})`` with integral, content-reduced numerators."""
    if n < 0:
        raise ValueError("negative strand count")
    if n > N_MAX:
        raise ResourceError(f"Jones-Wenzl f^({n}) exceeds the cap n_max = {N_MAX}")
    got = _jw_cache.get(n)
    if got is not None:
        return got
    if n <= 1:
        val = _JW(n, LaurentPoly.const(1), {identity(n): LaurentPoly.const(1)})
    else:
        prev = jw_fraction_free(n - 1)
        one = identity(1)
        lifted = {tensor(x, one): c for x, c in prev.nums.items()}
        e = {hook(n, n - 1): LaurentPoly.const(1)}
        hooked = _mul_sum(_mul_sum(lifted, e, n), lifted, n)
        dn1, dn2 = delta(n - 1), delta(n - 2)
        den = prev.den * prev.den * dn1
        nums: dict = {}
        for m, c in lifted.items():
            nums[m] = c * prev.den * dn1
        for m, c in hooked.items():
            nums[m] = nums.get(m, LaurentPoly()) - dn2 * c
        nums = {m: c for m, c in nums.items() if c}
        # cancel the common polynomial factor and any monomial/scalar content
        lo_d, dd = den.dense()
        g = _dense_gcd_all([den] + list(nums.values()))
        if len(g) > 1:
            gp = LaurentPoly.from_coeffs(g)
            den = den.exact_div(gp)
            nums = {m: c.exact_div(gp) for m, c in nums.items()}
        lo = min([den.min_degree()] + [c.min_degree() for c in nums.values()])
        den = den.shift(-lo)
        nums = {m: c.shift(-lo) for m, c in nums.items()}
        cont = 0
        for p in [den] + list(nums.values()):
            for _, v in p.items():
                cont = gcd(cont, int(v))
        sign = 1 if den.coeff(den.min_degree()) > 0 else -1
        cont *= sign
        if cont not in (0, 1):
            den = den * Fraction(1, cont)
            nums = {m: c * Fraction(1, cont) for m, c in nums.items()}
        val = _JW(n, den, nums)
        for p in [den] + list(nums.values()):
            if not p.is_integral():  # pragma: no cover - Gauss lemma
                raise ArithmeticError("non-integral Jones-Wenzl numerator")
    with _jw_lock:
        return _jw_cache.setdefault(n, val)


@lru_cache(maxsize=None)
def jw_coefficients(n: int) -> dict:
    """``{matching: RationalFn}`` for ``f^(n)``."""
    jw = jw_fraction_free(n)
    return {m: RationalFn(c, jw.den) for m, c in jw.nums.items()}
