"""Temperley-Lieb algebra, Jones-Wenzl idempotents and closed skein diagrams.

A matching on ``2n`` points uses the numbering of :mod:`cjtail._tlcore`:
bottom ``0 .. n-1`` and top ``n .. 2n-1``, both read left to right.
``x * y`` stacks ``x`` on top of ``y``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce

from . import _tlcore
from ._tlcore import N_MAX, all_matchings, catalan, compose, hook, identity, tensor
from .errors import AdequacyError, ResourceError, SkeinError
from .laurent import LaurentPoly, RationalFn, _poly_gcd, circle_value, delta, dot_eq_n, series_expand
from .network import ContractionStats, Piece, contract, plan_order

__all__ = [
    "Matching",
    "TLElement",
    "SkeinDiagram",
    "DegreeReport",
    "N_MAX",
    "catalan",
    "all_matchings",
    "tl_multiply",
    "monoid_multiply",
    "jones_wenzl",
    "partial_trace",
    "trace_closure",
    "evaluate_closed",
    "cut_width",
    "bar_diagram",
    "is_adequate_skein",
    "check_degree_lemma",
    "colored_circle",
    "disjoint_union",
    "junkterms_terms",
    "verify_junkterms",
    "tail_identity_closures",
    "verify_local_tail_identity",
]


@dataclass(frozen=True)
class Matching:
    """A crossingless perfect matching of ``TLM_n``."""

    pairing: tuple

    def __post_init__(self):
        p = tuple(self.pairing)
        object.__setattr__(self, "pairing", p)
        if not _tlcore.is_noncrossing(p):
            raise ValueError(f"not a crossingless matching: {p}")

    @property
    def n(self) -> int:
        return len(self.pairing) // 2

    @classmethod
    def identity(cls, n: int) -> "Matching":
        return cls(identity(n))

    @classmethod
    def hook(cls, n: int, i: int) -> "Matching":
        return cls(hook(n, i))

    @classmethod
    def from_parens(cls, s: str) -> "Matching":
        return cls(_tlcore.from_parens(s))

    def to_parens(self) -> str:
        return _tlcore.to_parens(self.pairing)

    def __str__(self):
        return self.to_parens()


def monoid_multiply(x: Matching, y: Matching) -> Matching:
    """Product in the monoid ``TLM_n``: closed circles are simply removed."""
    if x.n != y.n:
        raise ValueError(f"cannot multiply TLM_{x.n} by TLM_{y.n}")
    m, _ = compose(x.pairing, y.pairing)
    return Matching(m)


class TLElement:
    """A finite combination ``sum c_M M`` over ``TLM_n`` with :class:`RationalFn` coefficients."""

    __slots__ = ("n", "_combo")

    def __init__(self, n: int, combo=None):
        self.n = n
        out = {}
        for m, c in (combo or {}).items():
            key = m.pairing if isinstance(m, Matching) else tuple(m)
            if len(key) != 2 * n:
                raise ValueError(f"matching {key} does not live in TL_{n}")
            c = c if isinstance(c, RationalFn) else RationalFn(c)
            if not c.is_zero():
                out[key] = out[key] + c if key in out else c
        self._combo = {k: c for k, c in out.items() if not c.is_zero()}

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls(n, {identity(n): 1})

    @classmethod
    def hook(cls, n: int, i: int) -> "TLElement":
        return cls(n, {hook(n, i): 1})

    @classmethod
    def from_matching(cls, m: Matching, c=1) -> "TLElement":
        return cls(m.n, {m.pairing: c})

    @property
    def combo(self) -> dict:
        """``{Matching: RationalFn}``."""
        return {Matching(k): c for k, c in self._combo.items()}

    def items(self):
        return self._combo.items()

    def coeff(self, m) -> RationalFn:
        key = m.pairing if isinstance(m, Matching) else tuple(m)
        return self._combo.get(key, RationalFn(0))

    def is_zero(self) -> bool:
        return not self._combo

    def __len__(self):
        return len(self._combo)

    def __add__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        _same_n(self, other)
        out = dict(self._combo)
        for k, c in other._combo.items():
            out[k] = out[k] + c if k in out else c
        return TLElement(self.n, out)

    def __neg__(self):
        return TLElement(self.n, {k: -c for k, c in self._combo.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TLElement":
        return TLElement(self.n, {k: v * c for k, v in self._combo.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def tensor(self, other: "TLElement") -> "TLElement":
        """``self`` placed to the left of ``other``."""
        out = {}
        for k1, c1 in self._combo.items():
            for k2, c2 in other._combo.items():
                out[tensor(k1, k2)] = c1 * c2
        return TLElement(self.n + other.n, out)

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self._combo == other._combo

    def __hash__(self):
        return hash((self.n, frozenset(self._combo.items())))

    def __repr__(self):
        return f"TLElement({self.n}, {len(self._combo)} terms)"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"matching": _tlcore.to_parens(k), "num": str(c.num), "den": str(c.den)}
                for k, c in sorted(self._combo.items(), key=lambda kv: _tlcore.to_parens(kv[0]))
            ],
        }


def _same_n(x, y):
    if x.n != y.n:
        raise ValueError(f"mismatched strand counts {x.n} and {y.n}")


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _, da = a.dense()
    _, db = b.dense()
    g = LaurentPoly.from_coeffs(_poly_gcd(da, db))
    return (a * b).exact_div(g)


def _cleared(x: TLElement):
    """Common denominator and numerators of ``x``."""
    den = reduce(_lcm, {c.den for c in x._combo.values()}, LaurentPoly.const(1))
    return den, {k: c.num * den.exact_div(c.den) for k, c in x._combo.items()}


def _integral(polys) -> bool:
    return all(p.is_integral() for p in polys)


def _kpack(p: LaurentPoly, lo: int, B: int) -> int:
    v = 0
    for k, c in p.items():
        v += int(c) << (B * (k - lo))
    return v


def _kunpack(v: int, lo: int, B: int) -> LaurentPoly:
    terms = {}
    mask, half = (1 << B) - 1, 1 << (B - 1)
    k = lo
    while v:
        r = v & mask
        if r >= half:
            r -= 1 << B
        if r:
            terms[k] = r
        v = (v - r) >> B
        k += 1
    return LaurentPoly(terms)


def tl_multiply(x: TLElement, y: TLElement) -> TLElement:
    """Stack ``x`` on ``y``; each closed circle contributes ``-A^2 - A^-2``."""
    _same_n(x, y)
    dx, nx = _cleared(x)
    dy, ny = _cleared(y)
    grouped: dict = {}
    for k1 in nx:
        for k2 in ny:
            m, loops = compose(k1, k2)
            grouped.setdefault((m, loops), []).append((k1, k2))
    d = circle_value()
    out: dict = {}
    if _integral(nx.values()) and _integral(ny.values()) and nx and ny:
        # Kronecker substitution: one big-integer product per pair
        lo_x = min(p.min_degree() for p in nx.values())
        lo_y = min(p.min_degree() for p in ny.values())
        bound = sum(int(p.l1_norm()) for p in nx.values()) * sum(int(p.l1_norm()) for p in ny.values())
        B = bound.bit_length() + 2
        px = {k: _kpack(p, lo_x, B) for k, p in nx.items()}
        py = {k: _kpack(p, lo_y, B) for k, p in ny.items()}
        for (m, loops), pairs in grouped.items():
            s = sum(px[a] * py[b] for a, b in pairs)
            if s:
                term = _kunpack(s, lo_x + lo_y, B) * d ** loops
                out[m] = out[m] + term if m in out else term
    else:
        for (m, loops), pairs in grouped.items():
            s = LaurentPoly()
            for a, b in pairs:
                s = s + nx[a] * ny[b]
            term = s * d ** loops
            out[m] = out[m] + term if m in out else term
    den = dx * dy
    return TLElement(x.n, {m: RationalFn(p, den) for m, p in out.items() if p})


def jones_wenzl(n: int) -> TLElement:
    """``f^(n)`` from the Wenzl recursion; ``n`` is capped at ``N_MAX``."""
    if n < 1:
        raise ValueError("Jones-Wenzl idempotents are indexed from 1")
    return TLElement(n, _tlcore.jw_coefficients(n))


def partial_trace(x: TLElement) -> TLElement:
    """Close the rightmost strand of ``x`` around the right side."""
    n = x.n
    if n < 1:
        raise ValueError("nothing to trace")
    bot, top = n - 1, 2 * n - 1
    d = RationalFn(circle_value())

    def new_index(p):
        return p if p < n - 1 else p - 1

    out: dict = {}
    for k, c in x.items():
        res = [0] * (2 * n - 2)
        loops = 0
        if k[bot] == top:
            loops = 1
        for p in range(2 * n):
            if p in (bot, top):
                continue
            q = k[p]
            while q in (bot, top):
                q = k[top if q == bot else bot]
            res[new_index(p)] = new_index(q)
        key = tuple(res)
        val = c * d if loops else c
        out[key] = out[key] + val if key in out else val
    return TLElement(n - 1, out)


def trace_closure(x: TLElement) -> RationalFn:
    """Close every strand of ``x`` (top ``j`` to bottom ``j``) and evaluate."""
    d = circle_value()
    total = RationalFn(0)
    for k, c in x.items():
        total = total + c * d ** _count_cycles(k, x.n)
    return total


def _count_cycles(k, n) -> int:
    seen = [False] * (2 * n)
    cyc = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        cyc += 1
        p = s
        while not seen[p]:
            seen[p] = True
            q = k[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return cyc


# -- closed skein diagrams ------------------------------------------------------

@dataclass(frozen=True)
class SkeinDiagram:
    """A crossingless diagram of Jones-Wenzl boxes joined by colored arcs.

    Box ``i`` of size ``k`` carries ``f^(k)`` and has ``2k`` points numbered
    counterclockwise: bottom left to right (``0 .. k-1``), then top right to
    left (``k .. 2k-1``).  An arc ``(b1, p1, b2, p2, c)`` is a band of ``c``
    parallel strands; strand ``j`` joins point ``p1 + j`` of box ``b1`` to
    point ``p2 + c - 1 - j`` of box ``b2`` (positions are taken mod ``2k``).
    ``circles`` lists the colors of free circles drawn without a box.
    """

    boxes: tuple
    arcs: tuple
    circles: tuple = ()
    name: str = ""
    _strands: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        boxes = tuple(int(k) for k in self.boxes)
        arcs = tuple(tuple(int(v) for v in a) for a in self.arcs)
        circles = tuple(int(c) for c in self.circles)
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "circles", circles)
        if any(k < 1 for k in boxes):
            raise SkeinError("box sizes must be positive")
        if any(c < 0 for c in circles):
            raise SkeinError("circle colors must be nonnegative")
        used: dict = {}
        strands = []
        for ai, a in enumerate(arcs):
            if len(a) != 5:
                raise SkeinError(f"arc {a} must be (box, pos, box, pos, color)")
            b1, p1, b2, p2, c = a
            if c < 1:
                raise SkeinError(f"arc {a} has nonpositive color")
            for b in (b1, b2):
                if not 0 <= b < len(boxes):
                    raise SkeinError(f"arc {a} refers to a missing box")
            for j in range(c):
                e1 = (b1, (p1 + j) % (2 * boxes[b1]))
                e2 = (b2, (p2 + c - 1 - j) % (2 * boxes[b2]))
                for e in (e1, e2):
                    if e in used:
                        raise SkeinError(f"box point {e} is used twice")
                    used[e] = len(strands)
                strands.append((e1, e2))
        object.__setattr__(self, "_strands", tuple(strands))

    def is_closed(self) -> bool:
        return len(self._strands) == sum(self.boxes)

    def _require_closed(self):
        if not self.is_closed():
            raise SkeinError("skein diagram has free boundary points")

    def strands(self) -> tuple:
        """Pairs of box points joined by single strands."""
        return self._strands

    def to_json(self) -> dict:
        return {"name": self.name, "boxes": list(self.boxes), "arcs": [list(a) for a in self.arcs],
                "circles": list(self.circles)}

    @classmethod
    def from_json(cls, data) -> "SkeinDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["boxes"]), tuple(tuple(a) for a in data["arcs"]),
                   tuple(data.get("circles", ())), data.get("name", ""))


def _box_point(k: int, pos: int) -> int:
    """Counterclockwise position on a size-``k`` box to matching point index."""
    return pos if pos < k else 3 * k - 1 - pos


def colored_circle(n: int) -> SkeinDiagram:
    """One circle of color ``n`` through a single ``f^(n)``."""
    if n == 0:
        return SkeinDiagram((), ())
    return SkeinDiagram((n,), ((0, 0, 0, n, n),), name=f"circle[{n}]")


def disjoint_union(s1: SkeinDiagram, s2: SkeinDiagram) -> SkeinDiagram:
    off = len(s1.boxes)
    arcs = s1.arcs + tuple((a[0] + off, a[1], a[2] + off, a[3], a[4]) for a in s2.arcs)
    return SkeinDiagram(s1.boxes + s2.boxes, arcs, s1.circles + s2.circles)


def _pieces(s: SkeinDiagram):
    strand_of = {}
    for si, (e1, e2) in enumerate(s.strands()):
        strand_of[e1] = si
        strand_of[e2] = si
    pieces = []
    den = LaurentPoly.const(1)
    for b, k in enumerate(s.boxes):
        labels = [None] * (2 * k)
        for pos in range(2 * k):
            labels[_box_point(k, pos)] = strand_of[(b, pos)]
        jw = _tlcore.jw_fraction_free(k)
        pieces.append(Piece(tuple(labels), list(jw.nums.items())))
        den = den * jw.den
    return pieces, den


def cut_width(s: SkeinDiagram) -> int:
    """Largest frontier the sweep meets while evaluating ``s``."""
    s._require_closed()
    pieces, _ = _pieces(s)
    _, widths = plan_order(pieces)
    return max(widths, default=0)


def evaluate_closed(s: SkeinDiagram, budget: int | None = None, kernel: str | None = None,
                    stats: ContractionStats | None = None) -> RationalFn:
    """Value of a closed skein diagram; the empty diagram is 1."""
    s._require_closed()
    pieces, den = _pieces(s)
    val = contract(pieces, budget=budget, kernel=kernel, stats=stats) if pieces else LaurentPoly.const(1)
    val = val * circle_value() ** sum(s.circles)
    return RationalFn(val, den)


def _bar_cycles(s: SkeinDiagram) -> list:
    """Circles of the diagram with every box replaced by the identity.

    Each circle is returned as the list of boxes it passes through.
    """
    s._require_closed()
    partner = {}
    for e1, e2 in s.strands():
        partner[e1] = e2
        partner[e2] = e1
    seen = set()
    cycles = []
    for b, k in enumerate(s.boxes):
        for pos in range(2 * k):
            if (b, pos) in seen:
                continue
            visits = []
            cur = (b, pos)
            while cur not in seen:
                seen.add(cur)
                bb, pp = cur
                kk = s.boxes[bb]
                through = (bb, 2 * kk - 1 - pp)  # straight through the box
                seen.add(through)
                visits.append(bb)
                cur = partner[through]
            cycles.append(visits)
    return cycles


def bar_diagram(s: SkeinDiagram) -> int:
    """Number of circles once every idempotent is replaced by the identity."""
    return len(_bar_cycles(s)) + sum(s.circles)


def is_adequate_skein(s: SkeinDiagram) -> bool:
    """No identity-replaced circle passes through the same box region twice."""
    return all(len(v) == len(set(v)) for v in _bar_cycles(s))


@dataclass(frozen=True)
class DegreeReport:
    d_S: int | None
    d_bar: int
    adequate: bool
    inequality: bool | None
    equality: bool | None
    zero: bool = False

    def to_json(self) -> dict:
        return {"d_S": self.d_S, "d_bar": self.d_bar, "adequate": self.adequate,
                "inequality": self.inequality, "equality": self.equality, "zero": self.zero}


def check_degree_lemma(s: SkeinDiagram, value: RationalFn | None = None) -> DegreeReport:
    """Compare the minimum degree of ``s`` with that of its identity-replaced diagram."""
    v = evaluate_closed(s) if value is None else value
    d_bar = -2 * bar_diagram(s)
    adequate = is_adequate_skein(s)
    if v.is_zero():
        return DegreeReport(None, d_bar, adequate, None, None, zero=True)
    d_s = v.min_degree()
    return DegreeReport(d_s, d_bar, adequate, d_s >= d_bar, (d_s == d_bar) if adequate else None)


# -- identities behind the tail argument -------------------------------------------

def _hooks(m: int, lo: int, hi: int) -> TLElement:
    """``e_hi e_(hi-1) ... e_lo`` in ``TL_m`` (leftmost factor on top)."""
    out = TLElement.identity(m)
    for i in range(hi, lo - 1, -1):
        out = tl_multiply(out, TLElement.hook(m, i))
    return out


def junkterms_terms(a: int, b: int) -> tuple:
    """``(lhs, first, coefficient, second)`` of the box-splitting identity on ``a + b`` strands.

    ``lhs = f^(a+b) (f^(b) x f^(a))``, ``first = (f^(a+b-1) x 1)(f^(b) x f^(a))``
    and ``second = (f^(a+b-1) x 1) e_(a+b-1) ... e_b (f^(b) x f^(a))``.
    """
    if a < 1 or b < 1:
        raise ValueError("both blocks need at least one strand")
    m = a + b
    if m > N_MAX:
        raise ResourceError(f"{m} strands exceed the cap n_max = {N_MAX}")
    base = jones_wenzl(b).tensor(jones_wenzl(a))
    top = jones_wenzl(m - 1).tensor(TLElement.identity(1))
    lhs = tl_multiply(jones_wenzl(m), base)
    first = tl_multiply(top, base)
    second = tl_multiply(tl_multiply(top, _hooks(m, b, m - 1)), base)
    coeff = RationalFn(delta(b - 1), delta(m - 1)) * (-1) ** a
    return lhs, first, coeff, second


def verify_junkterms(a: int, b: int) -> bool:
    """Check the identity coefficient-wise in ``TL_(a+b)`` and after closing every strand."""
    lhs, first, coeff, second = junkterms_terms(a, b)
    rhs = first + second.scale(coeff)
    direct = lhs == rhs
    closed = trace_closure(lhs) == trace_closure(first) + coeff * trace_closure(second)
    return direct and closed


def tail_identity_closures() -> list:
    """The five noncrossing pairings of six bundles ``0 .. 5``.

    Bundles are read counterclockwise around the local picture: bottom left
    to right, then top right to left.
    """
    out: list = []
    _pairings(list(range(6)), [], out)
    return sorted(tuple(sorted(c)) for c in out)


def _pairings(items, acc, sink):
    if not items:
        sink.append(list(acc))
        return
    first = items[0]
    for idx in range(1, len(items), 2):
        inner: list = []
        _pairings(items[1:idx], [], inner)
        for i in inner:
            _pairings(items[idx + 1:], acc + [(first, items[idx])] + i, sink)


def _closed_local(n: int, closure, side: str) -> SkeinDiagram:
    """Pair one local picture with a closure whose bundles each carry ``f^(n)``."""
    if side == "left":
        boxes = [3 * n]
        ports = [(0, 0), (0, n), (0, 2 * n), (0, 3 * n), (0, 4 * n), (0, 5 * n)]
        arcs = []
    else:
        # box 0 is the upper f^(2n) on positions 0, 1; box 1 the lower one on positions 1, 2
        boxes = [2 * n, 2 * n]
        ports = [(0, 0), (1, 0), (1, n), (1, 2 * n), (0, 2 * n), (0, 3 * n)]
        # the lower box's top left half feeds the upper box's bottom right half
        arcs = [(1, 3 * n, 0, n, n)]
    # every closing band passes through its own f^(n)
    for i, j in closure:
        bi = len(boxes)
        boxes.append(n)
        arcs.append((ports[i][0], ports[i][1], bi, 0, n))
        arcs.append((bi, n, ports[j][0], ports[j][1], n))
    return SkeinDiagram(tuple(boxes), tuple(arcs), name=f"local[{n},{side},{closure}]")


def verify_local_tail_identity(n: int, closure) -> bool:
    """``f^(3n)`` against ``(f^(2n) x 1_n)(1_n x f^(2n))`` after pairing with ``closure``.

    Both pairings must be adequate; the evaluations are compared up to
    ``≐_{4(n+1)}``.
    """
    if n < 1:
        raise ValueError("color must be positive")
    if 3 * n > N_MAX:
        raise ResourceError(f"f^({3 * n}) exceeds the cap n_max = {N_MAX}")
    left = _closed_local(n, closure, "left")
    right = _closed_local(n, closure, "right")
    for s in (left, right):
        if not is_adequate_skein(s):
            raise AdequacyError(f"closure {closure} gives an inadequate pairing")
    order = 4 * (n + 1)
    v1 = series_expand(evaluate_closed(left), order)
    v2 = series_expand(evaluate_closed(right), order)
    return dot_eq_n(v1, v2, order)
