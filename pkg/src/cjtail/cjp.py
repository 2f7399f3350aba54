"""Colored Jones polynomials from cabled, idempotent-decorated diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import PlanarDiagram, cable
from .errors import AdequacyError
from .laurent import LaurentPoly, RationalFn, TruncatedSeries, delta, dot_eq_n, series_expand
from .network import ContractionStats, Piece, check_budget, contract, crossing_piece
from .states import IN, SmoothingDiagram, all_state, is_adequate
from .tl import SkeinDiagram, evaluate_closed
from ._tlcore import jw_fraction_free

__all__ = [
    "ColoredJonesResult",
    "unreduced_cjp",
    "reduced_cjp",
    "a_to_q",
    "box_piece",
    "skein_from_state",
    "s_b_diagram",
    "verify_mainlemma",
]


def box_piece(bottom, top) -> tuple[Piece, LaurentPoly]:
    """An ``f^(n)`` box as a network piece, plus the denominator it was scaled by."""
    n = len(bottom)
    jw = jw_fraction_free(n)
    terms = [(m, c) for m, c in jw.nums.items()]
    return Piece(tuple(bottom) + tuple(top), terms), jw.den


def unreduced_cjp(d: PlanarDiagram, n: int, budget: int | None = None, kernel: str | None = None,
                  stats: ContractionStats | None = None) -> LaurentPoly:
    """Kauffman bracket of the ``n``-cable of ``d`` with one ``f^(n)`` per component.

    The empty diagram is 1 and a plain circle is ``-A^2 - A^-2``.
    """
    if n < 0:
        raise ValueError("color must be nonnegative")
    if n == 0:
        return LaurentPoly.const(1)
    cp = cable(d, n)
    pieces = [crossing_piece(x) for x in cp.crossings]
    # one group per cabled crossing, so the planner sweeps whole grids
    groups = [list(range(i * n * n, (i + 1) * n * n)) for i in range(d.num_crossings)]
    groups += [[len(pieces) + i] for i in range(len(cp.boxes))]
    if pieces or cp.boxes:
        # refuse before building any f^(n), which is the slow part for large n
        check_budget(pieces + [Piece(tuple(b) + tuple(t), []) for b, t in cp.boxes], budget, groups=groups)
    den = LaurentPoly.const(1)
    for bottom, top in cp.boxes:
        p, dd = box_piece(bottom, top)
        pieces.append(p)
        den = den * dd
    if pieces:
        val = contract(pieces, budget=budget, kernel=kernel, stats=stats, groups=groups)
    else:
        val = LaurentPoly.const(1)
    val = val * delta(n) ** cp.loops
    if den != 1:
        val = val.exact_div(den)
    if not val.is_integral():  # pragma: no cover - would indicate an engine bug
        raise ArithmeticError("colored bracket has non-integral coefficients")
    return val


def a_to_q(p: LaurentPoly) -> dict:
    """Substitute ``A = q^(-1/4)``; keys are exponents of ``q`` in quarter units."""
    return {-k: c for k, c in p.items()}


@dataclass(frozen=True)
class ColoredJonesResult:
    knot_name: str
    color_n: int
    unreduced: LaurentPoly
    reduced_A: LaurentPoly
    writhe_used: int

    @property
    def N(self) -> int:
        return self.color_n + 1

    @property
    def reduced(self) -> dict:
        """``{quarter-exponent of q: coefficient}``."""
        return a_to_q(self.reduced_A)

    @property
    def shift(self) -> int:
        """Lowest exponent of ``q`` in quarter units."""
        r = self.reduced
        return min(r) if r else 0

    def q_coefficients(self) -> list:
        """Coefficients from the lowest power of ``q`` upward in integer steps."""
        r = self.reduced
        if not r:
            return []
        lo, hi = min(r), max(r)
        if any((k - lo) % 4 for k in r):
            raise ArithmeticError("exponents do not differ by whole powers of q")
        return [r.get(k, 0) for k in range(lo, hi + 1, 4)]

    def normalized(self) -> list:
        """Coefficients after shifting to ``q^0`` and making the constant term positive."""
        c = self.q_coefficients()
        if c and c[0] < 0:
            c = [-x for x in c]
        return c

    def series(self, order: int) -> TruncatedSeries:
        c = self.q_coefficients()
        c = (c + [0] * order)[:order]
        return TruncatedSeries("q", self.shift, tuple(c), order)

    def to_json(self) -> dict:
        return {
            "name": self.knot_name,
            "N": self.N,
            "writhe": self.writhe_used,
            "coefficients": self.normalized(),
            "shift": self.shift,
            "normalized": True,
        }


def reduced_cjp(d: PlanarDiagram, N: int, name: str = "", budget: int | None = None,
                kernel: str | None = None, stats: ContractionStats | None = None) -> ColoredJonesResult:
    """``J_{L,N}(q) = (-A)^((-n^2-2n) w) * J~_{D,n} / Delta_n`` at ``A = q^(-1/4)``, ``n = N - 1``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    n = N - 1
    w = d.writhe()
    unr = unreduced_cjp(d, n, budget=budget, kernel=kernel, stats=stats)
    e = (-n * n - 2 * n) * w
    unit = LaurentPoly.monomial(e, -1 if e % 2 else 1)
    red = (unr * unit).exact_div(delta(n))
    return ColoredJonesResult(name, n, unr, red, w)


def skein_from_state(s: SmoothingDiagram, n: int, name: str = "") -> SkeinDiagram:
    """Circles of ``s`` colored ``n``, with an ``f^(2n)`` in place of every chord.

    A circle without chords gets a single ``f^(n)``.
    """
    if n < 0:
        raise ValueError("color must be nonnegative")
    if n == 0:
        return SkeinDiagram((), (), name=name)

    def after_chord(p):
        # arcs met counterclockwise around slot p, starting just after its chord
        return [("prev", p), ("next", p)] if s.side[p] == IN else [("next", p), ("prev", p)]

    boxes = []
    port = {}
    for k, (p, r) in enumerate(s.chords):
        d1p, d2p = after_chord(p)
        d1r, d2r = after_chord(r)
        # both halves of each circle's band sit opposite each other on the box
        for j, dart in enumerate((d2p, d1r, d2r, d1p)):
            port[dart] = (k, j * n)
        boxes.append(2 * n)
    arcs = []
    for circle in s.circles:
        for slot in circle:
            b1, p1 = port[("next", slot)]
            b2, p2 = port[("prev", s.next_slot(slot))]
            arcs.append((b1, p1, b2, p2, n))
    for circle in s.circles:
        if not circle:
            b = len(boxes)
            boxes.append(n)
            arcs.append((b, 0, b, n, n))
    return SkeinDiagram(tuple(boxes), tuple(arcs), name=name)


def s_b_diagram(d: PlanarDiagram, n: int) -> SkeinDiagram:
    """The crossingless diagram ``S_B^(n)`` built from the all-B state of ``d``."""
    if not is_adequate(d, "B"):
        raise AdequacyError("diagram is not B-adequate")
    return skein_from_state(all_state(d, "B"), n, name=f"S_B^({n})")


def verify_mainlemma(d: PlanarDiagram, n: int, budget: int | None = None) -> bool:
    """``J~_{D,n} ≐_{4(n+1)} S_B^(n)`` for a B-adequate diagram."""
    sb = s_b_diagram(d, n)
    order = 4 * (n + 1)
    lhs = series_expand(RationalFn(unreduced_cjp(d, n, budget=budget)), order)
    rhs = series_expand(evaluate_closed(sb, budget=budget), order)
    return dot_eq_n(lhs, rhs, order)
