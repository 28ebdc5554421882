import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcolor import kernels
from dpcolor.config import (
    Configuration,
    is_degree_feasible,
    is_strictly_f_degenerate,
    iter_solutions,
    make_config,
    normalize,
    reduce,
    solve,
)
from dpcolor.constructible import build_m, random_constructible
from dpcolor.cover import Cover, identity_cover, make_cover
from dpcolor.errors import InvalidPivot, ReductionUnsound
from dpcolor.graph import build_graph, complete_graph, cycle_graph, path_graph

from . import oracles

K2 = complete_graph(2)


def matched_k2(f=(1, 1)):
    return make_config(make_cover(K2, [1, 1], {(0, 1): [(0, 0)]}), [[f[0]], [f[1]]])


def test_singletons():
    c = make_config(make_cover(complete_graph(1), [1]), [[0]])
    assert not is_strictly_f_degenerate(c, [0])
    c = make_config(make_cover(complete_graph(1), [1]), [[1]])
    assert is_strictly_f_degenerate(c, [(0, 0)])


def test_h_cycle_not_degenerate():
    c = make_config(identity_cover(cycle_graph(4), 1), [[1]] * 4)
    assert not is_strictly_f_degenerate(c, range(4))
    adj = [set(c.cover.h_neighbors(x)) for x in range(4)]
    assert not oracles.strictly_f_degenerate(adj, [1] * 4, range(4))


def test_degree_feasible_examples():
    assert is_degree_feasible(matched_k2())
    assert not is_degree_feasible(make_config(identity_cover(cycle_graph(3), 1), [[1]] * 3))
    assert is_degree_feasible(make_config(identity_cover(cycle_graph(4), 2), [[1, 1]] * 4))


def test_normalize_pads():
    c = make_config(make_cover(K2, [1, 2], {(0, 1): [(0, 1)]}), [[1], [1, 1]])
    n = normalize(c)
    assert n.cover.fiber_sizes == (2, 2)
    assert n.f[0] == (1, 0)
    assert normalize(n) == n


def test_normalize_keeps_verdict():
    c = make_config(make_cover(K2, [1, 3], {(0, 1): [(0, 2)]}), [[1], [0, 0, 1]])
    assert solve(c) is None and solve(normalize(c)) is None
    assert is_degree_feasible(normalize(c)) == is_degree_feasible(c)


def test_reduce_examples():
    r = reduce(matched_k2(), 1, 0)
    assert r.base.n == 1 and r.f == ((0,),)
    empty = make_config(make_cover(K2, [1, 1]), [[1], [1]])
    assert reduce(empty, 1, 0).f == ((1,),)
    c3 = make_config(identity_cover(cycle_graph(3), 1), [[2]] * 3)
    for v in range(3):
        assert reduce(c3, v, 0).f == ((1,), (1,))


def test_reduce_errors():
    p3 = make_config(identity_cover(path_graph(3), 1), [[1], [2], [1]])
    with pytest.raises(ReductionUnsound):
        reduce(p3, 1, 0)
    with pytest.raises(InvalidPivot):
        reduce(make_config(make_cover(K2, [1, 1]), [[0], [1]]), 0, 0)


def test_solve_examples():
    assert solve(matched_k2()) is None
    c = make_config(identity_cover(K2, 2), [[1, 1], [1, 1]])
    t = solve(c)
    assert t is not None and t.choice[0] != t.choice[1]
    assert solve(build_m(cycle_graph(4), 2, [0, 0, 0, 0])) is None


def test_solution_is_lexicographically_first():
    c = make_config(identity_cover(K2, 2), [[1, 1], [1, 1]])
    assert solve(c) == next(iter_solutions(c))


# -- invariants ---------------------------------------------------------------


@settings(max_examples=400, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**28), st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_peeling_equals_definition(size, bits, f):
    adj = [set() for _ in range(size)]
    masks = [0] * size
    pos = 0
    for a in range(size):
        for b in range(a + 1, size):
            if bits >> pos & 1:
                adj[a].add(b)
                adj[b].add(a)
                masks[a] |= 1 << b
                masks[b] |= 1 << a
            pos += 1
    got = kernels.strictly_degenerate(masks, f[:size], (1 << size) - 1)
    assert got == oracles.strictly_f_degenerate(adj, f[:size], range(size))


def _random_feasible(rng):
    """Random small configuration that is degree-feasible (often colourable)."""
    n = rng.randint(2, 6)
    while True:
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5]
        g = build_graph(edges, n)
        if g.is_connected():
            break
    s = rng.randint(1, 2)
    matchings = {}
    for e in g.edges:
        perm = list(range(s))
        rng.shuffle(perm)
        matchings[e] = frozenset((i, perm[i]) for i in range(s) if rng.random() < 0.85)
    cover = Cover(g, (s,) * n, matchings)
    f = []
    for v in range(n):
        row = [0] * s
        for _ in range(g.degree(v) + rng.randint(0, 1)):
            row[rng.randrange(s)] += 1
        f.append(tuple(row))
    return Configuration(cover, tuple(f))


def _pivots(c):
    cut = c.base.blocks.cut_vertices
    return [
        (v, i) for v in range(c.base.n) if v not in cut for i in range(len(c.f[v])) if c.f[v][i] > 0
    ]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_reduction_keeps_feasibility(seed):
    rng = random.Random(seed)
    c = _random_feasible(rng)
    v, i = rng.choice(_pivots(c))
    assert is_degree_feasible(reduce(c, v, i))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_reduction_keeps_uncolourability(seed):
    rng = random.Random(seed)
    c = random_constructible(rng, s=rng.randint(1, 3))
    if c.base.n < 2:
        return
    v, i = rng.choice(_pivots(c))
    r = reduce(c, v, i)
    assert solve(r) is None and is_degree_feasible(r)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_uncolourable_feasible_sums_are_exact(seed):
    rng = random.Random(seed)
    c = _random_feasible(rng)
    if solve(c) is None:
        assert all(c.fiber_sum(v) == c.base.degree(v) for v in range(c.base.n))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_vertex_deleted_solutions_are_tight(seed):
    rng = random.Random(seed)
    c = random_constructible(rng, s=2, max_blocks=2)
    if c.base.n < 2:
        return
    for u in range(c.base.n):
        sub, keep = c.delete_vertex(u)
        sols = list(iter_solutions(sub))
        assert sols
        for t in sols:
            chosen = {c.cover.hindex(keep[w], i) for w, i in enumerate(t.choice)}
            for i, x in enumerate(c.cover.fiber(u)):
                assert (c.cover.h_adjacency[x] & sum(1 << y for y in chosen)).bit_count() == c.f[u][i]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_engines_agree(seed):
    rng = random.Random(seed)
    c = random_constructible(rng) if rng.random() < 0.5 else _random_feasible(rng)
    a, b = solve(c), solve(c, engine="reduction")
    assert (a is None) == (b is None)
    if b is not None:
        assert is_strictly_f_degenerate(c, b.h_vertices(c.cover))
