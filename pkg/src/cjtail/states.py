"""Kauffman states: smoothing diagrams, state graphs, adequacy and local moves.

A smoothing diagram is a family of disjoint circles in the plane together
with chords, one for each crossing of the original diagram.  Every chord
endpoint sits on a circle at a *slot*.  Circles are stored as their slots in
counterclockwise order, and each slot records whether its chord leaves the
circle towards the inside (``IN``) or the outside (``OUT``).  That data is a
rotation system; realizability is checked by building the planar map and
counting faces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .diagram import PlanarDiagram
from .errors import AdequacyError, MoveError, RealizabilityError

__all__ = [
    "IN",
    "OUT",
    "SmoothingDiagram",
    "StateGraph",
    "ReducedGraph",
    "all_state",
    "state_graph",
    "is_adequate",
    "reduce_graph",
    "cycle_rank",
    "is_fibered_criterion",
    "main_theorem_move",
    "recover_link",
    "tail_normal_form",
    "tail_normal_form_pieces",
    "smoothing_from_drawing",
    "pd_canonical",
]

IN = "in"
OUT = "out"


class SmoothingDiagram:
    """Circles with chords, embedded in the plane.

    Parameters
    ----------
    circles : sequence of sequences of slot ids
        Counterclockwise slot order of every circle; chordless circles are empty.
    chords : sequence of ``(slot, slot)``
        Chord ``k`` joins the two given slots.
    side : mapping slot -> ``IN`` / ``OUT``
    """

    __slots__ = ("circles", "chords", "side", "slot_circle", "slot_chord", "slot_index",
                 "_faces", "_inside", "_parent")

    def __init__(self, circles: Sequence[Sequence[int]], chords: Sequence[tuple], side: dict):
        self.circles = tuple(tuple(c) for c in circles)
        self.chords = tuple(tuple(ch) for ch in chords)
        self.side = dict(side)
        slot_circle = {}
        slot_index = {}
        for ci, c in enumerate(self.circles):
            for k, s in enumerate(c):
                if s in slot_circle:
                    raise RealizabilityError(f"slot {s} appears twice")
                slot_circle[s] = ci
                slot_index[s] = k
        slot_chord = {}
        for k, ch in enumerate(self.chords):
            if len(ch) != 2:
                raise RealizabilityError("a chord needs exactly two endpoints")
            for s in ch:
                if s not in slot_circle:
                    raise RealizabilityError(f"chord {k} ends at unknown slot {s}")
                if s in slot_chord:
                    raise RealizabilityError(f"slot {s} carries two chord endpoints")
                slot_chord[s] = k
            if ch[0] == ch[1]:
                raise RealizabilityError(f"chord {k} has both ends at one slot")
        if set(slot_chord) != set(slot_circle):
            raise RealizabilityError("every slot must carry exactly one chord endpoint")
        for s in slot_circle:
            if self.side.get(s) not in (IN, OUT):
                raise RealizabilityError(f"slot {s} has no side")
        self.slot_circle = slot_circle
        self.slot_chord = slot_chord
        self.slot_index = slot_index
        self._build_faces()

    # -- basic navigation -----------------------------------------------------
    def partner(self, s: int) -> int:
        a, b = self.chords[self.slot_chord[s]]
        return b if a == s else a

    def next_slot(self, s: int) -> int:
        c = self.circles[self.slot_circle[s]]
        return c[(self.slot_index[s] + 1) % len(c)]

    def prev_slot(self, s: int) -> int:
        c = self.circles[self.slot_circle[s]]
        return c[(self.slot_index[s] - 1) % len(c)]

    def chord_circles(self, k: int) -> tuple:
        a, b = self.chords[k]
        return self.slot_circle[a], self.slot_circle[b]

    @property
    def num_circles(self) -> int:
        return len(self.circles)

    @property
    def num_chords(self) -> int:
        return len(self.chords)

    # -- planar map -------------------------------------------------------------
    def _rotation(self, s):
        # outgoing darts around slot s in counterclockwise order
        nxt = ("arc", s, 1)
        prv = ("arc", self.prev_slot(s), -1)
        ch = ("ch", s)
        return (nxt, ch, prv) if self.side[s] == IN else (nxt, prv, ch)

    def _reverse(self, d):
        if d[0] == "ch":
            return ("ch", self.partner(d[1]))
        return ("arc", d[1], -d[2])

    def _dart_head(self, d):
        if d[0] == "ch":
            return self.partner(d[1])
        return self.next_slot(d[1]) if d[2] == 1 else d[1]

    def _build_faces(self):
        rot = {s: self._rotation(s) for s in self.slot_circle}
        pos = {}
        for s, r in rot.items():
            for k, d in enumerate(r):
                pos[d] = (s, k)
        face_of = {}
        faces = []
        for d0 in pos:
            if d0 in face_of:
                continue
            fid = len(faces)
            cyc = []
            d = d0
            while d not in face_of:
                face_of[d] = fid
                cyc.append(d)
                r = self._reverse(d)
                v, k = pos[r]
                d = rot[v][(k - 1) % 3]
            faces.append(cyc)
        self._faces = (faces, face_of)
        # connected components of the map (circles joined by chords)
        parent = list(range(len(self.circles)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.chords:
            parent[find(self.slot_circle[a])] = find(self.slot_circle[b])
        comp_v: dict = {}
        comp_e: dict = {}
        comp_f: dict = {}
        for s in self.slot_circle:
            r = find(self.slot_circle[s])
            comp_v[r] = comp_v.get(r, 0) + 1
            comp_e[r] = comp_e.get(r, 0) + 1  # the arc leaving s
        for a, _ in self.chords:
            r = find(self.slot_circle[a])
            comp_e[r] = comp_e.get(r, 0) + 1
        for cyc in faces:
            r = find(self.slot_circle[self._dart_tail(cyc[0])])
            comp_f[r] = comp_f.get(r, 0) + 1
        for r in comp_v:
            if comp_v[r] - comp_e[r] + comp_f[r] != 2:
                raise RealizabilityError("chords cannot be drawn without crossings")
        # inside region of every circle: faces reachable from the left of its arcs
        inside = []
        for ci, c in enumerate(self.circles):
            if not c:
                inside.append(frozenset())
                continue
            own = {("arc", s, 1) for s in c} | {("arc", s, -1) for s in c}
            start = {face_of[("arc", s, 1)] for s in c}
            region = set(start)
            stack = list(start)
            while stack:
                f = stack.pop()
                for d in faces[f]:
                    if d in own:
                        continue
                    g = face_of[self._reverse(d)]
                    if g not in region:
                        region.add(g)
                        stack.append(g)
            outside_faces = {face_of[("arc", s, -1)] for s in c}
            if region & outside_faces:
                raise RealizabilityError(f"circle {ci} does not separate the plane")
            inside.append(frozenset(region))
        covered = set().union(*inside) if inside else set()
        for r in comp_v:
            fs = [f for f, cyc in enumerate(faces)
                  if find(self.slot_circle[self._dart_tail(cyc[0])]) == r]
            if all(f in covered for f in fs):
                raise RealizabilityError("no face lies outside every circle")
        self._inside = inside
        # nesting: innermost circle whose inside contains this circle
        parent_of = []
        for ci, c in enumerate(self.circles):
            best = None
            if c:
                f = face_of[("arc", c[0], -1)]
                for cj in range(len(self.circles)):
                    if cj != ci and f in inside[cj]:
                        if best is None or len(inside[cj]) < len(inside[best]):
                            best = cj
            parent_of.append(best)
        self._parent = tuple(parent_of)

    def _dart_tail(self, d):
        if d[0] == "ch":
            return d[1]
        return d[1] if d[2] == 1 else self.next_slot(d[1])

    @property
    def nesting(self) -> tuple:
        """``nesting[i]`` is the circle directly containing circle ``i`` (or ``None``)."""
        return self._parent

    def depth(self, ci: int) -> int:
        k = 0
        p = self._parent[ci]
        while p is not None:
            k += 1
            p = self._parent[p]
        return k

    def is_mixed(self, ci: int) -> bool:
        sides = {self.side[s] for s in self.circles[ci]}
        return len(sides) == 2

    # -- export -------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "circles": [[{"slot": s, "side": self.side[s]} for s in c] for c in self.circles],
            "chords": [list(ch) for ch in self.chords],
            "nesting": list(self._parent),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SmoothingDiagram":
        circles, side = [], {}
        for c in data["circles"]:
            circles.append([e["slot"] for e in c])
            for e in c:
                side[e["slot"]] = e["side"]
        return cls(circles, [tuple(ch) for ch in data["chords"]], side)

    def canonical_key(self) -> tuple:
        """Invariant of the embedded diagram under relabelling of slots, chords and circles."""
        best = None
        chordless = sum(1 for c in self.circles if not c)
        for s0 in self.slot_circle:
            code = self._code_from(s0)
            if best is None or code < best:
                best = code
        return (chordless, best)

    def _code_from(self, s0):
        label = {}
        order = []
        queue = [s0]
        done_circ = set()
        out = []
        while queue:
            s = queue.pop(0)
            ci = self.slot_circle[s]
            if ci in done_circ:
                continue
            done_circ.add(ci)
            c = self.circles[ci]
            k = self.slot_index[s]
            run = c[k:] + c[:k]
            for t in run:
                if t not in label:
                    label[t] = len(label)
                    order.append(t)
            for t in run:
                queue.append(self.partner(t))
            out.append(tuple(label[t] for t in run))
        # circles not reached from s0 (other components) are summarised coarsely
        rest = len(self.slot_circle) - len(label)
        body = tuple(
            (label[t], 1 if self.side[t] == IN else 0, label.get(self.partner(t), -1)) for t in order
        )
        return (rest, tuple(out), body)

    def __eq__(self, other):
        if not isinstance(other, SmoothingDiagram):
            return NotImplemented
        return self.circles == other.circles and self.chords == other.chords and self.side == other.side

    def __hash__(self):
        return hash((self.circles, self.chords))

    def __repr__(self):
        return f"SmoothingDiagram(circles={len(self.circles)}, chords={len(self.chords)})"


# -- graphs ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateGraph:
    vertices: tuple
    edges: tuple  # multiset of (u, v) with u <= v

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def edge_list(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in self.edges)


@dataclass(frozen=True)
class ReducedGraph:
    vertices: tuple
    edges: frozenset  # of (u, v) with u < v

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in sorted(self.edges)]}

    def edge_list(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in sorted(self.edges))

    def num_components(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in self.vertices})

    def is_tree(self) -> bool:
        return bool(self.vertices) and self.num_components() == 1 and cycle_rank(self) == 0

    def degree_sequence(self) -> tuple:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(sorted(deg.values()))


def state_graph(s: SmoothingDiagram) -> StateGraph:
    edges = []
    for k in range(s.num_chords):
        u, v = s.chord_circles(k)
        edges.append((min(u, v), max(u, v)))
    return StateGraph(tuple(range(s.num_circles)), tuple(edges))


def reduce_graph(g: StateGraph) -> ReducedGraph:
    if g.has_loop():
        raise AdequacyError("diagram not adequate")
    return ReducedGraph(tuple(g.vertices), frozenset(g.edges))


def cycle_rank(g) -> int:
    """First Betti number ``E - V + components``."""
    if isinstance(g, StateGraph):
        g = ReducedGraph(g.vertices, frozenset(g.edges)) if not g.has_loop() else None
        if g is None:
            raise AdequacyError("diagram not adequate")
    return len(g.edges) - len(g.vertices) + g.num_components()


# -- states of a PD diagram ------------------------------------------------------------

_ARCS = {"A": ((0, 1), (2, 3)), "B": ((3, 0), (1, 2))}


def all_state(d: PlanarDiagram, kind: str = "A") -> SmoothingDiagram:
    """The all-``kind`` smoothing of ``d``; chord ``i`` comes from crossing ``i``."""
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    arcs = _ARCS[kind]
    # smoothing partner of every position, and the slot of the arc through it
    spart = {}
    slot_of = {}
    for i in range(d.num_crossings):
        for k, (p, q) in enumerate(arcs):
            spart[(i, p)] = (i, q)
            spart[(i, q)] = (i, p)
            slot_of[(i, p)] = 2 * i + k
            slot_of[(i, q)] = 2 * i + k
    seen = set()
    circles = []  # list of [(slot, chord_on_left)]
    for i in range(d.num_crossings):
        for p in range(4):
            start = (i, p)
            if start in seen:
                continue
            cyc = []
            pos = start
            while True:
                q = spart[pos]
                seen.add(pos)
                seen.add(q)
                # passing the arc from pos to q: chord on the left iff q is the ccw successor
                cyc.append((slot_of[pos], q[1] == (pos[1] + 1) % 4))
                pos = d._edge_partner(q)
                if pos == start:
                    break
            circles.append(cyc)
    chords = [(2 * i, 2 * i + 1) for i in range(d.num_crossings)]

    def build(orient):
        cs, side = [], {}
        for ci, cyc in enumerate(circles):
            if orient[ci]:
                cs.append([s for s, _ in cyc])
                for s, left in cyc:
                    side[s] = IN if left else OUT
            else:
                rev = list(reversed(cyc))
                cs.append([s for s, _ in rev])
                for s, left in rev:
                    side[s] = OUT if left else IN
        cs += [[] for _ in d.loops]
        return cs, side

    orient = [True] * len(circles)
    cs, side = build(orient)
    probe = _Probe(cs, chords, side)
    # a split diagram has one outer face per connected piece, set side by side
    outer = probe.outer_faces()
    for ci in range(len(circles)):
        if probe.left_region(ci) & outer:
            orient[ci] = False
    cs, side = build(orient)
    return SmoothingDiagram(cs, chords, side)


class _Probe(SmoothingDiagram):
    """Map without the realizability checks; used while choosing circle orientations."""

    def __init__(self, circles, chords, side):
        self.circles = tuple(tuple(c) for c in circles)
        self.chords = tuple(tuple(c) for c in chords)
        self.side = dict(side)
        self.slot_circle, self.slot_index, self.slot_chord = {}, {}, {}
        for ci, c in enumerate(self.circles):
            for k, s in enumerate(c):
                self.slot_circle[s] = ci
                self.slot_index[s] = k
        for k, ch in enumerate(self.chords):
            for s in ch:
                self.slot_chord[s] = k
        rot = {s: self._rotation(s) for s in self.slot_circle}
        pos = {}
        for s, r in rot.items():
            for k, d in enumerate(r):
                pos[d] = (s, k)
        face_of, faces = {}, []
        for d0 in sorted(pos, key=repr):
            if d0 in face_of:
                continue
            fid = len(faces)
            cyc = []
            dd = d0
            while dd not in face_of:
                face_of[dd] = fid
                cyc.append(dd)
                v, k = pos[self._reverse(dd)]
                dd = rot[v][(k - 1) % 3]
            faces.append(cyc)
        self._faces = (faces, face_of)

    def outer_faces(self) -> set:
        """The largest face of every connected piece of the map."""
        faces, _ = self._faces
        parent = list(range(len(self.circles)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.chords:
            parent[find(self.slot_circle[a])] = find(self.slot_circle[b])
        best: dict = {}
        for f, cyc in enumerate(faces):
            r = find(self.slot_circle[self._dart_tail(cyc[0])])
            if r not in best or len(cyc) > len(faces[best[r]]):
                best[r] = f
        return set(best.values())

    def left_region(self, ci):
        faces, face_of = self._faces
        c = self.circles[ci]
        own = {("arc", s, 1) for s in c} | {("arc", s, -1) for s in c}
        start = {face_of[("arc", s, 1)] for s in c}
        region = set(start)
        stack = list(start)
        while stack:
            f = stack.pop()
            for dd in faces[f]:
                if dd in own:
                    continue
                g = face_of[self._reverse(dd)]
                if g not in region:
                    region.add(g)
                    stack.append(g)
        return region


def is_adequate(d: PlanarDiagram, kind: str = "A") -> bool:
    return not state_graph(all_state(d, kind)).has_loop()


def reduced_graph_of(d: PlanarDiagram, kind: str = "A") -> ReducedGraph:
    return reduce_graph(state_graph(all_state(d, kind)))


def is_fibered_criterion(d: PlanarDiagram) -> bool:
    """True iff the reduced all-A graph is a tree."""
    g = state_graph(all_state(d, "A"))
    if g.has_loop():
        raise AdequacyError("diagram not A-adequate")
    return reduce_graph(g).is_tree()


def beta_A(d: PlanarDiagram) -> int:
    return cycle_rank(reduced_graph_of(d, "A"))


# -- recovering a diagram ---------------------------------------------------------------

def recover_link(s: SmoothingDiagram, kind: str = "A") -> PlanarDiagram:
    """A link diagram whose all-``kind`` state is ``s``."""
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    # half-arc ends: ("s", e) is where arc e leaves slot e, ("f", e) where it reaches next_slot(e)
    def after_chord(p):
        nxt = ("s", p)
        prv = ("f", s.prev_slot(p))
        return [prv, nxt] if s.side[p] == IN else [nxt, prv]

    xs = []
    for p, r in s.chords:
        cyc = after_chord(p) + after_chord(r)
        if kind == "B":
            cyc = cyc[1:] + cyc[:1]
        xs.append(cyc)  # under-strand joins slots 0 and 2
    where = {}
    for i, cyc in enumerate(xs):
        for j, end in enumerate(cyc):
            where[end] = (i, j)

    def other_end(end):
        return ("f", end[1]) if end[0] == "s" else ("s", end[1])

    arrivals = set()
    label = {}
    comps_order = []
    for e0 in sorted(s.slot_circle):
        if e0 in label:
            continue
        # walk the strand leaving slot e0 along arc e0
        comp = []
        end = ("f", e0)
        cur_edge = e0
        while cur_edge not in label:
            label[cur_edge] = None
            comp.append(cur_edge)
            i, j = where[end]
            arrivals.add((i, j))
            nxt_end = xs[i][(j + 2) % 4]
            cur_edge = nxt_end[1]
            end = other_end(nxt_end)
        comps_order.append(comp)
    k = 1
    for comp in comps_order:
        for e in comp:
            label[e] = k
            k += 1
    crossings = []
    for i, cyc in enumerate(xs):
        start = 0 if (i, 0) in arrivals else 2
        rot = cyc[start:] + cyc[:start]
        crossings.append(tuple(label[end[1]] for end in rot))
    loops = [k + t for t, c in enumerate(s.circles) if not c]
    return PlanarDiagram(crossings, loops)


# -- canonical form of a PD, for isotopy comparisons -----------------------------------

def pd_canonical(d: PlanarDiagram) -> tuple:
    """Label-independent code of an oriented diagram (connected crossing graph assumed per component)."""
    best = None
    for i0 in range(d.num_crossings):
        code = _pd_code_from(d, i0)
        if best is None or code < best:
            best = code
    return (len(d.loops), best)


def _pd_code_from(d, i0):
    xi = {i0: 0}
    order = [i0]
    elab = {}
    out = []
    q = 0
    while q < len(order):
        i = order[q]
        q += 1
        row = []
        for sl in range(4):
            e = d.crossings[i][sl]
            if e not in elab:
                elab[e] = len(elab)
            row.append(elab[e])
            for (j, _) in d.occurrences(e):
                if j not in xi:
                    xi[j] = len(order)
                    order.append(j)
        out.append(tuple(row))
    return (d.num_crossings - len(order), tuple(out))


# -- the local move -----------------------------------------------------------------------

def _swap_ok(s: SmoothingDiagram, a: int, b: int) -> None:
    """Check that adjacent slots ``a`` and ``b`` on one circle may exchange places."""
    m = s.slot_circle[a]
    if s.side[a] == s.side[b]:
        raise MoveError("a chord endpoint cannot pass another chord on the same side of the circle")
    la = s.slot_circle[s.partner(a)]
    lb = s.slot_circle[s.partner(b)]
    if len({m, la, lb}) != 3:
        raise MoveError("the two chords and the circle must involve three different circles")


def _with_circle(s: SmoothingDiagram, ci: int, new_order) -> SmoothingDiagram:
    circles = list(s.circles)
    circles[ci] = tuple(new_order)
    return SmoothingDiagram(circles, s.chords, s.side)


def main_theorem_move(s: SmoothingDiagram, chord: int, target: tuple) -> SmoothingDiagram:
    """Slide an endpoint of ``chord`` along a circle so it sits just after slot ``target[1]``.

    ``target = (circle, slot)``; the endpoint of ``chord`` on ``circle`` moves
    past every slot between its position and ``slot``, one elementary
    exchange at a time.  Each exchange must be with a chord on the opposite
    side of the circle leading to a third circle.  The counterclockwise path
    is tried first, then the clockwise one.
    """
    ci, tslot = target
    if not 0 <= chord < s.num_chords:
        raise MoveError(f"no chord {chord}")
    ends = [x for x in s.chords[chord] if s.slot_circle[x] == ci]
    if not ends:
        raise MoveError(f"chord {chord} has no endpoint on circle {ci}")
    if len(ends) == 2:
        raise MoveError("chord has both endpoints on the circle (inadequate)")
    a = ends[0]
    if tslot not in s.slot_circle or s.slot_circle[tslot] != ci:
        raise MoveError(f"slot {tslot} is not on circle {ci}")
    c = list(s.circles[ci])
    if tslot == a or c[(c.index(a) - 1) % len(c)] == tslot:
        return s
    errors = []
    for direction in (1, -1):
        order = list(c)
        try:
            i = order.index(a)
            while order[(i - 1) % len(order)] != tslot:
                j = (i + direction) % len(order)
                _swap_ok(s, a, order[j])
                order[i], order[j] = order[j], order[i]
                i = j
        except MoveError as exc:
            errors.append(str(exc))
            continue
        return _with_circle(s, ci, order)
    raise MoveError("; ".join(errors))


# -- normal form for tails -----------------------------------------------------------------

def _restrict(s: SmoothingDiagram, circle_ids, slot_filter=None) -> SmoothingDiagram:
    """Sub-diagram on the given circles keeping chords with both ends kept."""
    keep = []
    for ci in circle_ids:
        cs = [t for t in s.circles[ci] if slot_filter is None or slot_filter(ci, t)]
        keep.append(cs)
    kept = {t for cs in keep for t in cs}
    chords = [ch for ch in s.chords if ch[0] in kept and ch[1] in kept]
    used = {t for ch in chords for t in ch}
    circles = [[t for t in cs if t in used] for cs in keep]
    side = {t: s.side[t] for t in used}
    return SmoothingDiagram(circles, chords, side)


def _sort_mixed_circle(s: SmoothingDiagram, ci: int) -> SmoothingDiagram:
    """Reorder a mixed circle by legal exchanges so its inside slots form one run."""
    order = list(s.circles[ci])
    n = len(order)
    # rotate so the run starts at an inside slot following an outside slot
    for _ in range(n * n + 1):
        ins = [k for k in range(n) if s.side[order[k]] == IN]
        runs = sum(1 for k in range(n) if s.side[order[k]] == IN and s.side[order[k - 1]] == OUT)
        if runs <= 1:
            return _with_circle(s, ci, order)
        # push the first inside slot of the second run back towards the first run
        start = next(k for k in range(n) if s.side[order[k]] == IN and s.side[order[k - 1]] == OUT)
        k = start
        while s.side[order[k % n]] == IN:
            k += 1
        # k % n is the first outside slot after the run; move the next inside slot backwards
        j = k
        while s.side[order[j % n]] == OUT:
            j += 1
        while j > k:
            a, b = order[j % n], order[(j - 1) % n]
            _swap_ok(s, a, b)
            order[j % n], order[(j - 1) % n] = b, a
            j -= 1
    raise RuntimeError("sorting did not terminate")  # pragma: no cover


def _split_mixed(s: SmoothingDiagram, ci: int) -> tuple:
    """Split a sorted mixed circle; return ``(inside_piece, outside_piece)``."""
    inside_circles = [cj for cj in range(s.num_circles) if cj != ci and _contains(s, ci, cj)]
    outside_circles = [cj for cj in range(s.num_circles) if cj != ci and cj not in inside_circles]
    pin = _restrict(s, [ci] + inside_circles, lambda c, t: c != ci or s.side[t] == IN)
    pout = _restrict(s, [ci] + outside_circles, lambda c, t: c != ci or s.side[t] == OUT)
    return pin, pout


def _contains(s: SmoothingDiagram, outer: int, inner: int) -> bool:
    p = s.nesting[inner]
    while p is not None:
        if p == outer:
            return True
        p = s.nesting[p]
    return False


def _blocks(s: SmoothingDiagram) -> list:
    """Split an alternating diagram at cut-vertex circles; one sub-diagram per block of G_A."""
    g = nx.MultiGraph()
    g.add_nodes_from(range(s.num_circles))
    for k in range(s.num_chords):
        u, v = s.chord_circles(k)
        g.add_edge(u, v, key=k)
    simple = nx.Graph(g)
    pieces = []
    for comp in nx.biconnected_components(simple) if simple.number_of_edges() else []:
        chords = {k for k in range(s.num_chords) if set(s.chord_circles(k)) <= comp}
        # every slot of a kept chord stays; other slots on shared circles go
        ends = {t for k in chords for t in s.chords[k]}
        piece = _restrict(s, sorted(comp), lambda c, t: t in ends)
        pieces.append(piece)
    return pieces


def _normal_pieces(s: SmoothingDiagram) -> list:
    g = state_graph(s)
    if g.has_loop():
        raise AdequacyError("diagram not A-adequate")
    todo = [s]
    alt = []
    while todo:
        cur = todo.pop()
        mixed = [ci for ci in range(cur.num_circles) if cur.is_mixed(ci)]
        if not mixed:
            alt.append(cur)
            continue
        ci = max(mixed, key=lambda c: (cur.depth(c), -c))
        cur = _sort_mixed_circle(cur, ci)
        pin, pout = _split_mixed(cur, ci)
        todo.append(pout)
        todo.append(pin)
    pieces = []
    for p in alt:
        if p.num_chords == 0:
            continue
        pieces.extend(_blocks(p))
    return pieces


def _is_bridge_piece(p: SmoothingDiagram) -> bool:
    return len({frozenset(p.chord_circles(k)) for k in range(p.num_chords)}) == 1


def tail_normal_form_pieces(s: SmoothingDiagram) -> list:
    """Alternating sub-diagrams whose tails multiply to the tail of ``s``.

    Pieces whose reduced graph is a single edge have tail 1 and are dropped,
    unless nothing else remains, in which case one of them is returned.
    """
    pieces = _normal_pieces(s)
    kept = [p for p in pieces if not _is_bridge_piece(p)]
    if not kept and pieces:
        kept = [pieces[0]]
    return kept


def tail_normal_form(s: SmoothingDiagram) -> list:
    """Reduced graphs of the alternating pieces from :func:`tail_normal_form_pieces`."""
    return [reduce_graph(state_graph(p)) for p in tail_normal_form_pieces(s)]


# -- drawings -------------------------------------------------------------------------------

def smoothing_from_drawing(circles, chords, tol: float = 0.25) -> SmoothingDiagram:
    """Build a smoothing diagram from circle ``(x, y, r)`` data and chord segments.

    Each chord endpoint is attached to the circle whose boundary it is
    nearest to; the slot order is by angle and the side is decided by
    whether the other endpoint lies inside that circle.
    """
    slots: dict = {ci: [] for ci in range(len(circles))}
    side = {}
    chord_slots = []
    sid = 0
    for k, (p, q) in enumerate(chords):
        ends = []
        for here, there in ((p, q), (q, p)):
            dist = [abs(math.hypot(here[0] - x, here[1] - y) - r) for (x, y, r) in circles]
            ci = min(range(len(circles)), key=dist.__getitem__)
            if dist[ci] > tol:
                raise RealizabilityError(f"chord {k} endpoint {here} is not on a circle")
            x, y, r = circles[ci]
            ang = math.atan2(here[1] - y, here[0] - x)
            inside = math.hypot(there[0] - x, there[1] - y) < r
            slots[ci].append((ang, sid))
            side[sid] = IN if inside else OUT
            ends.append(sid)
            sid += 1
        chord_slots.append(tuple(ends))
    cs = [[t for _, t in sorted(slots[ci])] for ci in range(len(circles))]
    return SmoothingDiagram(cs, chord_slots, side)
