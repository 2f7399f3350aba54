from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cjtail import corpus
from cjtail.corpus import _end_on
from cjtail.diagram import PlanarDiagram, mirror
from cjtail.errors import AdequacyError, MoveError, RealizabilityError
from cjtail.states import (IN, ReducedGraph, SmoothingDiagram, StateGraph, all_state, beta_A, cycle_rank,
                           is_adequate, is_fibered_criterion, main_theorem_move, pd_canonical, recover_link,
                           reduce_graph, reduced_graph_of, state_graph, tail_normal_form)

from helpers import braid

braid_words = st.integers(2, 4).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(1, k - 1).flatmap(
        lambda i: st.sampled_from([i, -i])), min_size=1, max_size=7)))


def _unoriented(d: PlanarDiagram):
    """Canonical code up to reversing any set of components."""
    comps = [set(c) for c in d.components]
    codes = []
    for mask in range(2 ** len(comps)):
        rev = set().union(*(c for i, c in enumerate(comps) if mask >> i & 1))
        xs = [(c, e, a, b) if a in rev else (a, b, c, e) for a, b, c, e in d.crossings]
        codes.append(pd_canonical(PlanarDiagram(xs, d.loops)))
    return min(codes)


def _iso(g1: StateGraph, g2: StateGraph) -> bool:
    m1, m2 = nx.MultiGraph(), nx.MultiGraph()
    for m, g in ((m1, g1), (m2, g2)):
        m.add_nodes_from(g.vertices)
        m.add_edges_from(g.edges)
    return nx.is_isomorphic(m1, m2)


def test_trefoil_states():
    r = all_state(corpus.get("rtrefoil"), "A")
    assert (r.num_circles, r.num_chords) == (2, 3)
    left = all_state(corpus.get("ltrefoil"), "A")
    assert left.num_circles == 3
    assert left.canonical_key() == all_state(corpus.get("rtrefoil"), "B").canonical_key()


def test_state_graphs():
    g = state_graph(all_state(corpus.get("rtrefoil"), "A"))
    assert len(g.vertices) == 2 and g.edges == ((0, 1),) * 3
    t = reduce_graph(state_graph(all_state(corpus.get("ltrefoil"), "A")))
    assert len(t.vertices) == 3 and len(t.edges) == 3
    assert reduce_graph(g).edges == frozenset({(0, 1)})


def test_10_154m_graphs():
    g = state_graph(all_state(corpus.get("10_154m"), "A"))
    assert len(g.vertices) == 5 and len(g.edges) == 10
    mult: dict = {}
    for e in g.edges:
        mult[e] = mult.get(e, 0) + 1
    # one pair of circles joined by three chords
    assert 3 in mult.values()
    r = reduce_graph(g)
    assert len(r.vertices) == 5 and len(r.edges) == 6
    # two triangles sharing exactly one vertex
    tris = [t for t in _triangles(r)]
    assert len(tris) == 2 and len(set(tris[0]) & set(tris[1])) == 1
    assert cycle_rank(r) == 2 == beta_A(corpus.get("10_154m"))


def _triangles(g: ReducedGraph):
    vs = sorted(g.vertices)
    e = g.edges
    for i, a in enumerate(vs):
        for j, b in enumerate(vs[i + 1:], i + 1):
            for c in vs[j + 1:]:
                if (a, b) in e and (a, c) in e and (b, c) in e:
                    yield (a, b, c)


def test_adequacy_examples():
    assert is_adequate(corpus.get("rtrefoil"), "A")
    kink = corpus.get("kinked-unknot")
    assert not (is_adequate(kink, "A") and is_adequate(kink, "B"))
    assert is_adequate(corpus.get("10_154m"), "A")
    with pytest.raises(AdequacyError, match="diagram not adequate"):
        reduce_graph(StateGraph((0,), ((0, 0),)))


def test_cycle_rank_examples():
    assert cycle_rank(ReducedGraph((0, 1, 2), frozenset({(0, 1), (1, 2)}))) == 0
    assert cycle_rank(ReducedGraph((0, 1, 2), frozenset({(0, 1), (1, 2), (0, 2)}))) == 1


def test_fibered_examples():
    assert is_fibered_criterion(corpus.get("rtrefoil"))
    assert not is_fibered_criterion(corpus.get("ltrefoil"))
    for word, k in (([1] * 5, 2), ([1, 2] * 4, 3), ([1, 1, 2, 1, 2, 2], 3)):
        assert is_fibered_criterion(braid(word, k))
    with pytest.raises(AdequacyError):
        is_fibered_criterion(corpus.get("kinked-unknot"))


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_state_invariants(name):
    d = corpus.get(name)
    for kind in "AB":
        s = all_state(d, kind)
        assert s.num_chords == d.num_crossings == len(state_graph(s).edges)
        # the state determines the diagram up to orientation
        assert _unoriented(recover_link(s, kind)) == _unoriented(d)
        assert all_state(recover_link(s, kind), kind).canonical_key() == s.canonical_key()
        assert SmoothingDiagram.from_json(json.loads(json.dumps(s.to_json()))) == s
    assert is_adequate(d, "A") == is_adequate(mirror(d), "B")
    assert all_state(mirror(d), "A").canonical_key() == all_state(d, "B").canonical_key()
    if is_adequate(d, "A"):
        g = reduced_graph_of(d, "A")
        assert (cycle_rank(g) == 0 and g.num_components() == 1) == is_fibered_criterion(d)


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_random_state_invariants(kw):
    d = braid(kw[1], kw[0])
    for kind in "AB":
        s = all_state(d, kind)
        assert len(state_graph(s).edges) == d.num_crossings
        # on the sphere the outer face is a convention, so compare diagrams
        assert _unoriented(recover_link(s, kind)) == _unoriented(d)
        assert _iso(state_graph(all_state(recover_link(s, kind), kind)), state_graph(s))
    assert is_adequate(d, "A") == is_adequate(mirror(d), "B")


def test_unrealizable_and_malformed():
    with pytest.raises(RealizabilityError):
        SmoothingDiagram([[0, 1, 2, 3]], [(0, 2), (1, 3)], {s: IN for s in range(4)})
    with pytest.raises(RealizabilityError):
        SmoothingDiagram([[0, 1]], [(0, 2)], {0: IN, 1: IN})
    one = SmoothingDiagram([[]], [], {})
    u = recover_link(one, "A")
    assert u.num_crossings == 0 and len(u.loops) == 1


def test_move_on_10_154m_gives_the_drawn_picture():
    s = corpus.state_10_154m()
    assert _unoriented(recover_link(s, "A")) == _unoriented(corpus.get("10_154m"))
    moved = corpus.moved_state_10_154m(s)
    assert moved.canonical_key() == corpus.drawn_moved_state_10_154m().canonical_key()
    assert moved.num_circles == s.num_circles and moved.num_chords == s.num_chords
    r = recover_link(moved, "A")
    assert is_adequate(r, "A")
    assert _unoriented(r) == _unoriented(corpus.get("10_154m-moved"))


def test_move_and_back():
    s = corpus.state_10_154m()
    a = _end_on(s, 7, 0)
    before = s.prev_slot(a)
    m = main_theorem_move(s, 7, (0, _end_on(s, 2, 0)))
    assert m != s
    assert main_theorem_move(m, 7, (0, before)) == s


def test_move_errors():
    s = corpus.state_10_154m()
    with pytest.raises(MoveError, match="no chord"):
        main_theorem_move(s, 99, (0, 0))
    with pytest.raises(MoveError, match="no endpoint on circle"):
        main_theorem_move(s, 7, (2, 9))
    with pytest.raises(MoveError, match="same side"):
        main_theorem_move(s, 0, (0, 15))


def test_every_legal_move_preserves_structure():
    s = corpus.state_10_154m()
    legal = 0
    for k in range(s.num_chords):
        for ci in range(s.num_circles):
            for t in s.circles[ci]:
                try:
                    m = main_theorem_move(s, k, (ci, t))
                except MoveError:
                    continue
                legal += 1
                assert (m.num_circles, m.num_chords) == (s.num_circles, s.num_chords)
                assert is_adequate(recover_link(m, "A"), "A")
    assert legal > 10


def test_tail_normal_form_examples():
    tri = {frozenset({(0, 1), (0, 2), (1, 2)})}
    assert [len(g.edges) for g in tail_normal_form(all_state(corpus.get("ltrefoil"), "A"))] == [3]
    pieces = tail_normal_form(all_state(corpus.get("10_154m"), "A"))
    assert len(pieces) == 2 and all(g.edges in tri for g in pieces)
    left_granny = mirror(corpus.get("granny"))
    pieces = tail_normal_form(all_state(left_granny, "A"))
    assert len(pieces) == 2 and all(g.edges in tri for g in pieces)
    # an alternating diagram is its own single piece
    f8 = all_state(corpus.get("figure-eight"), "A")
    assert [g.edges for g in tail_normal_form(f8)] == [reduce_graph(state_graph(f8)).edges]
