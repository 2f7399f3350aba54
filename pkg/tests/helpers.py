"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import product

from cjtail import corpus
from cjtail.cjp import skein_from_state
from cjtail.diagram import PlanarDiagram, parse_pd
from cjtail.laurent import LaurentPoly
from cjtail.states import all_state


def braid_pd(word, k: int) -> str:
    """PD code of the closure of a braid word on ``k`` strands (``+i`` positive, ``-i`` negative)."""
    cur = list(range(1, k + 1))
    nxt = k + 1
    xs = []
    for g in word:
        i = abs(g) - 1
        x, y = cur[i], cur[i + 1]
        x2, y2 = nxt, nxt + 1
        nxt += 2
        if g > 0:
            xs.append([y, y2, x2, x])
        else:
            xs.append([x, y, y2, x2])
        cur[i], cur[i + 1] = x2, y2
    ren = {cur[j]: j + 1 for j in range(k)}
    xs = [[ren.get(e, e) for e in c] for c in xs]
    used = sorted({e for c in xs for e in c})
    m = {e: i + 1 for i, e in enumerate(used)}
    return "PD[" + ", ".join("X[%s]" % ",".join(str(m[e]) for e in c) for c in xs) + "]"


def braid(word, k: int) -> PlanarDiagram:
    return parse_pd(braid_pd(word, k))


def add_kink(d: PlanarDiagram, edge: int, positive: bool) -> PlanarDiagram:
    """Insert a Reidemeister I curl on ``edge`` just before it reaches its head."""
    top = max(e for x in d.crossings for e in x)
    m1, m2 = top + 1, top + 2
    i, s = d.head(edge)
    xs = [list(x) for x in d.crossings]
    xs[i][s] = m2
    # the loop m1 leaves as the under-strand and comes back over
    kink = [edge, m2, m1, m1] if positive else [edge, m1, m1, m2]
    return PlanarDiagram(xs + [kink], d.loops)


# -- brute-force Kauffman bracket ------------------------------------------------------

def _orient_by_walking(crossings):
    """For each (crossing, position), whether the strand there enters the crossing."""
    where: dict = {}
    for i, x in enumerate(crossings):
        for p, e in enumerate(x):
            where.setdefault(e, []).append((i, p))
    entering: dict = {}
    for i in range(len(crossings)):
        if (i, 0) in entering:
            continue
        cur = (i, 0)  # the under-strand enters at position 0
        while cur not in entering:
            entering[cur] = True
            ci, cp = cur
            out = (ci, (cp + 2) % 4)
            entering[out] = False
            e = crossings[ci][out[1]]
            occ = where[e]
            nxt = occ[0] if occ[1] == out else occ[1]
            if occ[0] == occ[1]:  # pragma: no cover - cannot happen for valid codes
                nxt = out
            cur = nxt
    return entering


def oracle_writhe(crossings) -> int | None:
    """Writhe from under-strand directions; ``None`` if some component never passes under."""
    entering = _orient_by_walking(crossings)
    w = 0
    for i in range(len(crossings)):
        if (i, 3) not in entering:
            return None
        # positive when the over-strand enters at position 3 and leaves at 1
        w += 1 if entering[(i, 3)] else -1
    return w


def oracle_bracket(crossings, loops: int = 0) -> LaurentPoly:
    """Sum over all ``2^c`` states of ``A^(#A - #B) d^(circles)``."""
    d = LaurentPoly({2: -1, -2: -1})
    total = LaurentPoly()
    c = len(crossings)
    for choice in product((0, 1), repeat=c):
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for i, (a, b, cc, dd) in enumerate(crossings):
            if choice[i] == 0:  # A: (a,b), (c,d)
                union(("e", a), ("e", b))
                union(("e", cc), ("e", dd))
            else:  # B: (a,d), (b,c)
                union(("e", a), ("e", dd))
                union(("e", b), ("e", cc))
        circles = len({find(x) for x in list(parent)})
        na = choice.count(0)
        total = total + LaurentPoly.monomial(na - (c - na)) * d ** (circles + loops)
    return total


def oracle_jones_A(d: PlanarDiagram) -> LaurentPoly:
    """Reduced Jones polynomial in ``A``: ``(-A^3)^(-w) <D> / d``."""
    xs = [tuple(x) for x in d.crossings]
    br = oracle_bracket(xs, len(d.loops))
    w = oracle_writhe(xs) if xs else 0
    if w is None:
        raise ValueError("orientation not determined by the under-strands")
    unit = LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)
    return (br * unit).exact_div(LaurentPoly({2: -1, -2: -1}))


def q_coeffs(p: LaurentPoly) -> list:
    """Coefficients of ``p`` in ``q = A^-4``, lowest power of ``q`` first."""
    items = sorted(((-k, c) for k, c in p.items()))
    lo = items[0][0]
    out = [0] * ((items[-1][0] - lo) // 4 + 1)
    for k, c in items:
        out[(k - lo) // 4] = c
    return out


def generated_skein_diagrams(seed=7, count=16):
    """Skein diagrams from all-A and all-B states of corpus and random braid closures, colors 1, 2."""
    rng = random.Random(seed)
    diagrams = [corpus.get(n) for n in ("kinked-unknot", "ltrefoil", "rtrefoil", "figure-eight", "6_2",
                                       "5_1", "granny", "square")]
    while len(diagrams) < 8 + count:
        k = rng.choice([2, 3])
        word = [rng.choice([1, -1]) * rng.randint(1, k - 1) for _ in range(rng.randint(2, 5))]
        diagrams.append(braid(word, k))
    out = []
    for d in diagrams:
        for kind in "AB":
            s = all_state(d, kind)
            for n in (1, 2):
                out.append((s, skein_from_state(s, n)))
    return out
