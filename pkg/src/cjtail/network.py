"""Exact contraction of crossing/idempotent networks.

A network is a list of pieces.  Each piece has a tuple of endpoint labels
and a list of terms ``(pairing, coefficient)`` where ``pairing`` pairs up
the piece's endpoints and ``coefficient`` is an integer Laurent polynomial.
Every label occurs exactly twice over all pieces; the two occurrences are
joined by a plain strand.  The value of the network is the sum over all
term choices of the product of coefficients times ``(-A^2 - A^-2)`` to the
number of closed loops.

Pieces are absorbed one at a time into a frontier of boundary matchings.
Every coefficient of a boundary matching is ``A^r`` times a polynomial in
``A^4``, so states are keyed by the matching plus ``r mod 4`` and carried as
integers packed at ``A^4 = 2**B`` (one balanced ``B``-bit digit per power of
``A^4``), together with an integer majorant bounding every digit.  When the
majorant threatens a digit, the states are decoded to reset the majorants
to the true coefficients, and ``B`` is widened only if that is not enough.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from math import comb

from .errors import ResourceError
from .laurent import LaurentPoly

log = logging.getLogger(__name__)

try:  # compiled kernel, built from _sweep.pyx when Cython is available
    from . import _sweep as _compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None
from . import _sweep_py

KERNEL = "compiled" if _compiled is not None else "python"

# default cap on the predicted number of frontier states (a Catalan number)
DEFAULT_BUDGET = 10 ** 6
BUDGET_ENV = "CJTAIL_BUDGET"

A_PAIRING = (1, 0, 3, 2)  # (a,b)(c,d)
B_PAIRING = (3, 2, 1, 0)  # (a,d)(b,c)


def default_budget() -> int:
    v = os.environ.get(BUDGET_ENV)
    if v:
        try:
            return int(v)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {v!r}") from None
    return DEFAULT_BUDGET


def get_kernel(name: str | None = None):
    """Return the step module: ``"compiled"``, ``"python"`` or ``None`` for the best available."""
    if name is None:
        return _compiled if _compiled is not None else _sweep_py
    if name == "python":
        return _sweep_py
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled sweep kernel is not built")
        return _compiled
    raise ValueError(f"unknown kernel {name!r}")


@dataclass
class Piece:
    labels: tuple
    terms: list  # [(pairing tuple, LaurentPoly)]


def crossing_piece(labels) -> Piece:
    A = LaurentPoly.monomial(1)
    return Piece(tuple(labels), [(A_PAIRING, A), (B_PAIRING, LaurentPoly.monomial(-1))])


def smoothing_piece(labels, kind: str) -> Piece:
    """A crossing with a fixed smoothing and coefficient 1."""
    return Piece(tuple(labels), [(A_PAIRING if kind == "A" else B_PAIRING, LaurentPoly.const(1))])


@dataclass
class ContractionStats:
    max_width: int = 0
    max_states: int = 0
    digit_bits: int = 0
    widenings: int = 0
    kernel: str = ""
    widths: list = field(default_factory=list)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _check_labels(pieces) -> dict:
    label_pieces: dict = {}
    for i, p in enumerate(pieces):
        for l in p.labels:
            label_pieces.setdefault(l, []).append(i)
    for l, ps in label_pieces.items():
        if len(ps) != 2:
            raise ValueError(f"label {l!r} occurs {len(ps)} times in the network")
    return label_pieces


def _greedy(pieces, members, boundary, label_pieces, done):
    """Greedy order of ``members`` starting from an open ``boundary``; mutates both."""
    order = []
    remaining = set(members)
    while remaining:
        best = None
        touching = [i for i in remaining if any(l in boundary for l in pieces[i].labels)]
        for i in (touching or remaining):
            labs = pieces[i].labels
            g = sum(1 for l in labs if l in boundary)
            seen = set()
            selfp = 0
            for l in labs:
                if l in seen:
                    selfp += 1
                seen.add(l)
            key = (len(labs) - 2 * selfp - 2 * g, -g, i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        remaining.discard(i)
        done[i] = True
        order.append(i)
        for l in pieces[i].labels:
            if l in boundary:
                boundary.discard(l)
            elif not all(done[j] for j in label_pieces[l]):
                boundary.add(l)
    return order


def _group_order(pieces, groups, label_pieces) -> list:
    """Order groups to minimise the largest frontier, exactly for small counts."""
    k = len(groups)
    gid = {}
    for g, members in enumerate(groups):
        for i in members:
            gid[i] = g
    # weight of the connection between two groups
    links: dict = {}
    for l, (i, j) in label_pieces.items():
        a, b = gid[i], gid[j]
        if a != b:
            links[(a, b)] = links.get((a, b), 0) + 1
            links[(b, a)] = links.get((b, a), 0) + 1
    nbr = [dict() for _ in range(k)]
    for (a, b), w in links.items():
        nbr[a][b] = w
    if k > 18:
        # greedy at the group level
        inside = set()
        order = []
        while len(order) < k:
            best = None
            for g in range(k):
                if g in inside:
                    continue
                cut = sum(w for h, w in nbr[g].items() if h not in inside) - sum(
                    w for h, w in nbr[g].items() if h in inside)
                key = (cut, g)
                if best is None or key < best:
                    best = key
            inside.add(best[1])
            order.append(best[1])
        return order
    full = (1 << k) - 1
    cut = [0] * (1 << k)
    for S in range(1, 1 << k):
        low = (S & -S).bit_length() - 1
        prev = S & (S - 1)
        c = cut[prev]
        for h, w in nbr[low].items():
            c += -w if (prev >> h) & 1 else w
        cut[S] = c
    INF = float("inf")
    best = [INF] * (1 << k)
    choice = [-1] * (1 << k)
    best[0] = 0
    for S in range(1, 1 << k):
        b = INF
        ch = -1
        T = S
        while T:
            low = T & -T
            v = low.bit_length() - 1
            cand = best[S ^ low]
            if cand < b:
                b = cand
                ch = v
            T ^= low
        best[S] = max(b, cut[S])
        choice[S] = ch
    order = []
    S = full
    while S:
        v = choice[S]
        order.append(v)
        S ^= 1 << v
    order.reverse()
    return order


def plan_order(pieces, groups=None) -> tuple[list, list]:
    """Absorption order keeping the frontier small; returns ``(order, widths)``.

    ``groups`` optionally partitions the pieces (for instance the grid of one
    cabled crossing); groups are ordered first and pieces inside a group
    greedily.  Without groups, every piece is its own group.
    """
    label_pieces = _check_labels(pieces)
    if groups is None:
        groups = [[i] for i in range(len(pieces))]
    gorder = _group_order(pieces, groups, label_pieces) if groups else []
    done = [False] * len(pieces)
    boundary: set = set()
    order = []
    for g in gorder:
        order += _greedy(pieces, groups[g], boundary, label_pieces, done)
    widths = []
    open_: set = set()
    seen_once: set = set()
    for i in order:
        for l in pieces[i].labels:
            if l in open_:
                open_.discard(l)
            elif l in seen_once:
                pass
            else:
                open_.add(l)
                seen_once.add(l)
        widths.append(len(open_))
    return order, widths


def predicted_states(width: int) -> int:
    return catalan(width // 2)


def _split4(p: LaurentPoly) -> list:
    """Split ``p`` by exponent residue mod 4."""
    parts: dict = {}
    for k, c in p.items():
        parts.setdefault(k % 4, {})[k] = c
    return [LaurentPoly(t) for _, t in sorted(parts.items())]


def _pack(p: LaurentPoly, B: int) -> tuple[int, int]:
    """Pack ``p`` (exponents all congruent mod 4) at ``A^4 = 2**B``; return ``(value, low_exponent)``."""
    lo = p.min_degree()
    v = 0
    for k, c in p.items():
        v += int(c) << (B * ((k - lo) >> 2))
    return v, lo


def _unpack(v: int, B: int, lo: int) -> LaurentPoly:
    terms = {}
    mask = (1 << B) - 1
    half = 1 << (B - 1)
    k = lo
    while v:
        r = v & mask
        if r >= half:
            r -= 1 << B
        if r:
            terms[k] = r
        v = (v - r) >> B
        k += 4
    return LaurentPoly(terms)


def check_budget(pieces, budget: int | None = None, stats: ContractionStats | None = None,
                 groups=None) -> list:
    """Plan the sweep and refuse it if the predicted state count exceeds ``budget``.

    Only the labels of ``pieces`` are looked at.  Returns the absorption order.
    """
    if stats is None:
        stats = ContractionStats()
    order, widths = plan_order(pieces, groups)
    stats.widths = widths
    stats.max_width = max(widths, default=0)
    budget = default_budget() if budget is None else budget
    need = predicted_states(stats.max_width)
    if need > budget:
        raise ResourceError(
            f"frontier width {stats.max_width} needs up to {need} states, over the budget {budget}"
        )
    return order


def contract(pieces, budget: int | None = None, kernel: str | None = None, digit_bits: int = 64,
             stats: ContractionStats | None = None, groups=None) -> LaurentPoly:
    """Value of the closed network, as an integer Laurent polynomial."""
    if stats is None:
        stats = ContractionStats()
    for p in pieces:
        for _, c in p.terms:
            if not c.is_integral():
                raise ValueError("piece coefficients must have integer coefficients")
    order = check_budget(pieces, budget, stats, groups)
    mod = get_kernel(kernel)
    stats.kernel = "python" if mod is _sweep_py else "compiled"
    return _run(pieces, order, mod, max(16, digit_bits), stats)


def _tables(piece, closed, B):
    """Per-term pairings and ``[t][loops]`` multiplier, shift and majorant tables.

    Each term is split by exponent residue so every packed multiplier is a
    polynomial in ``A^4``.  Returns the tables and the exponent ``base``
    that shift 0 stands for.
    """
    split = []
    for pairing, c in piece.terms:
        for part in _split4(c):
            v, lo = _pack(part, B)
            split.append((tuple(pairing), v, lo, int(part.l1_norm())))
    base = min(lo for _, _, lo, _ in split)
    ring = (1 << B) + 1  # packed 1 + A^4
    ringpow = [1]
    for _ in range(closed):
        ringpow.append(ringpow[-1] * ring)
    terms, mults, shifts, mfacs = [], [], [], []
    for pairing, v, lo, l1 in split:
        terms.append(pairing)
        mr, sr, fr = [], [], []
        for loops in range(closed + 1):
            # (-A^2 - A^-2)^loops = (-1)^loops A^(-2 loops) (1 + A^4)^loops
            mv = v * ringpow[loops]
            mr.append(-mv if loops % 2 else mv)
            sr.append(lo - base + 2 * (closed - loops))
            fr.append(l1 << loops)
        mults.append(mr)
        shifts.append(sr)
        mfacs.append(fr)
    return terms, mults, shifts, mfacs, base - 2 * closed


def _tighten(states, B, newB):
    """Repack at ``newB`` bits and reset each majorant to the true largest coefficient."""
    mask = (1 << B) - 1
    half = 1 << (B - 1)
    out = {}
    top = 0
    for key, (P, _) in states.items():
        digits = []
        v = P
        while v:
            r = v & mask
            if r >= half:
                r -= 1 << B
            digits.append(r)
            v = (v - r) >> B
        m = max((abs(r) for r in digits), default=0)
        top = max(top, m)
        w = 0
        for r in reversed(digits):
            w = (w << newB) + r
        out[key] = (w, m)
    return out, top


def _run(pieces, order, mod, B, stats):
    stats.digit_bits = B
    states = {b"\x00": (1, 1)}
    boundary: list = []
    offset = 0  # exponent of A represented by digit 0 with residue 0
    for step_no, i in enumerate(order):
        piece = pieces[i]
        labs = piece.labels
        k = len(labs)
        b = len(boundary)
        where = {l: idx for idx, l in enumerate(boundary)}
        glue = [-1] * (b + k)
        first_seen: dict = {}
        closed = 0
        for j, l in enumerate(labs):
            node = b + j
            if l in where:
                o = where[l]
            elif l in first_seen:
                o = first_seen.pop(l)
            else:
                first_seen[l] = node
                continue
            glue[o] = node
            glue[node] = o
            closed += 1
        new_boundary = [l for idx, l in enumerate(boundary) if glue[idx] < 0]
        new_boundary += [labs[node - b] for node in sorted(first_seen.values())]
        newpos = [-1] * (b + k)
        pos = 0
        for idx in range(b):
            if glue[idx] < 0:
                newpos[idx] = pos
                pos += 1
        for node in sorted(first_seen.values()):
            newpos[node] = pos
            pos += 1
        tightened = False
        while True:
            terms, mults, shifts, mfacs, dbase = _tables(piece, closed, B)
            new, best = mod.step(states, b, glue, newpos, len(new_boundary), terms, mults, shifts, mfacs, B)
            if best < 1 << (B - 2):
                break
            del new
            if not tightened:
                # the majorant is loose; measure the real coefficients first
                states, _ = _tighten(states, B, B)
                tightened = True
                continue
            newB = max(2 * B, best.bit_length() + 16)
            states, _ = _tighten(states, B, newB)
            B = newB
            stats.widenings += 1
            stats.digit_bits = B
            log.debug("widening digits to %d bits", B)
        states = new
        offset += dbase
        boundary = new_boundary
        stats.max_states = max(stats.max_states, len(states))
        if step_no % 8 == 7:
            states, offset = _renormalize(states, B, offset)
    if boundary:  # pragma: no cover - plan_order closes everything
        raise RuntimeError("network left open boundary")
    total = LaurentPoly()
    for key, (P, _) in states.items():
        total = total + _unpack(P, B, offset + key[-1])
    return total


def _renormalize(states, B, offset):
    low = None
    for P, _ in states.values():
        if P:
            z = (P & -P).bit_length() - 1
            s = z // B
            if low is None or s < low:
                low = s
                if low == 0:
                    return states, offset
    if not low:
        return states, offset
    sh = low * B
    return {k: (P >> sh, m) for k, (P, m) in states.items()}, offset + 4 * low
