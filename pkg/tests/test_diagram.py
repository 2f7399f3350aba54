from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from cjtail import corpus
from cjtail.diagram import cable, connected_sum, mirror, parse_pd, writhe
from cjtail.errors import PDArityError, PDEdgeCountError, PDSyntaxError

from helpers import braid, oracle_writhe

LEFT = "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"

braid_words = st.integers(2, 4).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(1, k - 1).flatmap(
        lambda i: st.sampled_from([i, -i])), min_size=1, max_size=7)))


def test_parse_examples():
    d = parse_pd("X[1,4,2,3], X[3,2,4,1]")
    assert d.num_crossings == 2
    assert all(len(d.occurrences(e)) == 2 for e in d.edges)
    t = parse_pd(LEFT)
    assert (t.num_crossings, t.num_edges, t.num_components) == (3, 6, 1)
    assert parse_pd("PD[" + LEFT + "]") == t


def test_parse_errors_are_distinct():
    with pytest.raises(PDArityError):
        parse_pd("X[1,2,3]")
    with pytest.raises(PDSyntaxError):
        parse_pd("X[1,2,3,4")
    with pytest.raises(PDSyntaxError):
        parse_pd("X[1,a,2,2]")
    with pytest.raises(PDEdgeCountError):
        parse_pd("X[1,2,3,4]")


def test_writhe_examples():
    assert writhe(parse_pd("PD[Loop[1]]")) == 0
    assert writhe(corpus.get("rtrefoil")) == 3
    assert writhe(parse_pd(LEFT)) == -3
    assert writhe(mirror(parse_pd(LEFT))) == 3


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_invariants(name):
    d = corpus.get(name)
    assert d.is_planar()
    m = mirror(d)
    assert writhe(m) == -writhe(d)
    assert m.num_components == d.num_components
    assert mirror(m) == d
    assert parse_pd(d.to_pd()) == d
    if d.crossings:
        assert writhe(d) == oracle_writhe(list(d.crossings))


def test_connected_sum_examples():
    t = corpus.get("rtrefoil")
    u = parse_pd("PD[Loop[1]]")
    assert connected_sum(u, t, 1, 1).crossings == tuple(tuple(e + 1 for e in x) for x in t.crossings)
    g = connected_sum(t, t, 1, 1)
    assert g.num_crossings == 6 and g.num_components == 1
    assert g.is_planar()
    with pytest.raises(ValueError):
        connected_sum(t, t, 99, 1)


def test_cable_examples():
    t = parse_pd(LEFT)
    c1 = cable(t, 1)
    assert c1.num_crossings == 3 and c1.boxes == ()
    assert cable(t, 0).num_crossings == 0
    assert cable(t, 2).num_crossings == 12
    assert len(cable(t, 2).boxes) == 1
    assert cable(corpus.get("granny"), 3).num_crossings == 54
    with pytest.raises(ValueError):
        cable(t, -1)


@settings(max_examples=60, deadline=None)
@given(braid_words)
def test_random_braid_closures(kw):
    k, word = kw
    d = braid(word, k)
    assert d.is_planar()
    assert writhe(d) == sum(1 if g > 0 else -1 for g in word)
    w = oracle_writhe(list(d.crossings))
    if w is not None:
        assert writhe(d) == w
    if w is not None and oracle_writhe(list(mirror(d).crossings)) is not None:
        # a component that never passes under carries no orientation in its PD code
        assert mirror(mirror(d)) == d
    assert d.relabel().writhe() == d.writhe()
    assert parse_pd(d.to_pd()) == d


@settings(max_examples=30, deadline=None)
@given(braid_words, braid_words)
def test_connected_sum_components(a, b):
    d1, d2 = braid(a[1], a[0]), braid(b[1], b[0])
    s = connected_sum(d1, d2, 1, 1)
    assert s.num_components == d1.num_components + d2.num_components - 1
    assert s.writhe() == d1.writhe() + d2.writhe()
    assert s.is_planar()
