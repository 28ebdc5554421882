import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcolor.chromatic import list_coloring
from dpcolor.cover import (
    Cover,
    cover_from_lists,
    critical_subcover,
    fiber_contact_degrees,
    find_P_transversal,
    identity_cover,
    is_P_critical_cover,
    is_P_transversal,
    low_vertex_subgraph,
    make_cover,
)
from dpcolor.graph import build_graph, complete_graph, cycle_graph, path_graph
from dpcolor.properties import EDGELESS, d_of, degenerate, triangle_free

from . import oracles

K2 = complete_graph(2)
D1 = degenerate(1)


def test_validate_examples():
    assert make_cover(K2, [2, 2], {(0, 1): [(0, 0), (1, 1)]}).validate()
    bad = make_cover(K2, [2, 2], {(0, 1): [(0, 0), (0, 1)]})
    assert not bad.validate()
    assert bad.violation()[0] == (0, 1)
    tri = cycle_graph(3)
    assert make_cover(tri, [1, 1, 1], {e: [(0, 0)] for e in tri.edges}).validate()


def test_validate_rejects_out_of_range_and_non_edges():
    assert not make_cover(K2, [1, 1], {(0, 1): [(0, 1)]}).validate()
    assert not make_cover(path_graph(3), [1, 1, 1], {(0, 2): [(0, 0)]}).validate()


def test_lists_examples():
    c = cover_from_lists(K2, [[1, 2], [1, 2]])
    assert c.matching(0, 1) == {(0, 0), (1, 1)}
    assert cover_from_lists(K2, [[1, 2], [3, 4]]).matching(0, 1) == frozenset()
    c3 = cover_from_lists(cycle_graph(3), [[1, 2]] * 3)
    assert all(c3.matching(u, v) == {(0, 0), (1, 1)} for u, v in c3.base.edges)
    assert find_P_transversal(c3, EDGELESS) is None


def test_transversal_examples():
    c3 = identity_cover(cycle_graph(3), 2)
    assert find_P_transversal(c3, EDGELESS) is None
    c4 = identity_cover(cycle_graph(4), 2)
    t = find_P_transversal(c4, EDGELESS)
    assert t is not None and is_P_transversal(c4, EDGELESS, t)
    for v in range(3):
        t = find_P_transversal(c3, EDGELESS, forbidden=v)
        assert t is not None and t.domain == tuple(u for u in range(3) if u != v)


def test_transversal_is_first_in_search_order():
    # C4 identity cover: vertices tried 0,1,2,3; the first proper choice is 0,1,0,1
    t = find_P_transversal(identity_cover(cycle_graph(4), 2), EDGELESS)
    assert t.choice == (0, 1, 0, 1)


def test_critical_examples():
    matched = make_cover(K2, [1, 1], {(0, 1): [(0, 0)]})
    assert is_P_critical_cover(matched, EDGELESS)
    assert not is_P_critical_cover(make_cover(K2, [1, 1]), EDGELESS)
    assert is_P_critical_cover(identity_cover(cycle_graph(5), 2), EDGELESS)


def test_low_vertex_examples():
    matched = make_cover(K2, [1, 1], {(0, 1): [(0, 0)]})
    low = low_vertex_subgraph(matched, EDGELESS)
    assert low.low_set == {0, 1} and low.graph.num_edges == 1
    low = low_vertex_subgraph(identity_cover(cycle_graph(5), 2), EDGELESS)
    assert low.low_set == set(range(5)) and low.graph.is_cycle()
    low = low_vertex_subgraph(identity_cover(complete_graph(4), 3), EDGELESS)
    assert low.low_set == set(range(4)) and low.graph.is_complete()


CRITICAL = [
    (identity_cover(cycle_graph(5), 2), EDGELESS),
    (identity_cover(complete_graph(4), 3), EDGELESS),
    (identity_cover(complete_graph(5), 2), D1),
    (identity_cover(cycle_graph(3), 1), D1),
]


@pytest.mark.parametrize("c,p", CRITICAL)
def test_exact_degree_fact(c, p):
    assert is_P_critical_cover(c, p)
    r = d_of(p)
    low = low_vertex_subgraph(c, p)
    for v in low.low_set:
        t = find_P_transversal(c, p, forbidden=v)
        counts = fiber_contact_degrees(c, v, t)
        assert sum(counts) == c.base.degree(v)
        assert all(d == r for d in counts)


def test_critical_subcover():
    # K4 with identity 2-covers contains the critical C3 identity cover
    sub, keep = critical_subcover(identity_cover(complete_graph(4), 2), EDGELESS)
    assert len(keep) == 3 and is_P_critical_cover(sub, EDGELESS)
    assert critical_subcover(identity_cover(cycle_graph(4), 2), EDGELESS) is None


def test_generic_search_agrees_with_kernel():
    rng = random.Random(3)
    tf = triangle_free()
    for _ in range(60):
        n = rng.randint(2, 5)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.6]
        g = build_graph(edges, n)
        c = _random_cover(rng, g, 2)
        brute = oracles.has_transversal(c.fiber_sizes, c.matchings, lambda m, e: not e)
        assert (find_P_transversal(c, EDGELESS) is not None) == brute
        brute_tf = oracles.has_transversal(
            c.fiber_sizes, c.matchings, lambda m, e: tf.member(build_graph(e, m))
        )
        assert (find_P_transversal(c, tf) is not None) == brute_tf


def _random_cover(rng, g, s):
    matchings = {}
    for e in g.edges:
        perm = list(range(s))
        rng.shuffle(perm)
        matchings[e] = frozenset((i, perm[i]) for i in range(s) if rng.random() < 0.8)
    return Cover(g, (s,) * g.n, matchings)


@st.composite
def list_instances(draw):
    n = draw(st.integers(1, 6))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    lists = [draw(st.lists(st.integers(0, 3), min_size=1, max_size=3, unique=True)) for _ in range(n)]
    return n, edges, lists


@settings(max_examples=150, deadline=None)
@given(list_instances())
def test_lists_match_direct_list_colouring(inst):
    n, edges, lists = inst
    g = build_graph(edges, n)
    c = cover_from_lists(g, lists)
    assert c.validate()
    for p, member in ((EDGELESS, oracles.is_edgeless), (D1, lambda m, e: oracles.is_k_degenerate(1, m, e))):
        expected = oracles.list_colorable(n, edges, lists, member)
        assert (find_P_transversal(c, p) is not None) == expected
        assert (list_coloring(g, p, lists) is not None) == expected


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000))
def test_restriction_keeps_colourability(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    g = build_graph([(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5], n)
    c = _random_cover(rng, g, 2)
    if find_P_transversal(c, EDGELESS) is None:
        return
    keep = [v for v in range(n) if rng.random() < 0.7]
    sub, _ = c.restrict(keep)
    assert find_P_transversal(sub, EDGELESS) is not None
