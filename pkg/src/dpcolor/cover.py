"""Covers ``(X, H)`` of a graph and their transversals.

H is never stored as a flat graph. A cover is the base graph, one fiber
size per vertex, and for each base edge ``uv`` (``u < v``) a set of pairs
``(i, j)`` joining the i-th vertex of ``X_u`` to the j-th vertex of ``X_v``.
H-vertices are addressed either as ``(v, i)`` or by a flat index
``offset[v] + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import kernels
from .graph import Graph, build_graph
from .properties import PropertyOracle, d_of


@dataclass(frozen=True, eq=False)
class Cover:
    base: Graph
    fiber_sizes: tuple[int, ...]
    matchings: Mapping[tuple[int, int], frozenset[tuple[int, int]]] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cover):
            return NotImplemented
        return (
            self.base == other.base
            and self.fiber_sizes == other.fiber_sizes
            and self.canonical_matchings() == other.canonical_matchings()
        )

    def __hash__(self) -> int:
        return hash((self.base, self.fiber_sizes, tuple(sorted(self.canonical_matchings().items()))))

    def canonical_matchings(self) -> dict[tuple[int, int], frozenset[tuple[int, int]]]:
        return {e: frozenset(m) for e, m in self.matchings.items() if m}

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.fiber_sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    @property
    def num_h(self) -> int:
        return sum(self.fiber_sizes)

    def hindex(self, v: int, i: int) -> int:
        return self.offsets[v] + i

    @cached_property
    def _owner(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, i) for v, s in enumerate(self.fiber_sizes) for i in range(s))

    def haddr(self, x: int) -> tuple[int, int]:
        return self._owner[x]

    def fiber(self, v: int) -> range:
        o = self.offsets[v]
        return range(o, o + self.fiber_sizes[v])

    def matching(self, u: int, v: int) -> frozenset[tuple[int, int]]:
        """Pairs ``(i, j)`` with ``(u, i) ~ (v, j)``, oriented from u to v."""
        if u < v:
            return frozenset(self.matchings.get((u, v), ()))
        return frozenset((j, i) for i, j in self.matchings.get((v, u), ()))

    @cached_property
    def h_adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.num_h
        for (u, v), pairs in self.matchings.items():
            for i, j in pairs:
                a, b = self.hindex(u, i), self.hindex(v, j)
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        return tuple(adj)

    def h_neighbors(self, x: int) -> list[int]:
        m, out = self.h_adjacency[x], []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def h_graph(self) -> Graph:
        """Flat export of H (debugging and generic property oracles)."""
        edges = [
            (self.hindex(u, i), self.hindex(v, j))
            for (u, v), pairs in self.matchings.items()
            for i, j in pairs
        ]
        return build_graph(edges, self.num_h)

    def h_induced(self, hvertices: Iterable[int]) -> Graph:
        keep = sorted(set(hvertices))
        pos = {x: i for i, x in enumerate(keep)}
        edges = [
            (pos[x], pos[y]) for x in keep for y in self.h_neighbors(x) if y in pos and x < y
        ]
        return build_graph(edges, len(keep))

    def restrict(self, vertices: Iterable[int]) -> tuple[Cover, tuple[int, ...]]:
        """Cover of the induced subgraph ``G[vertices]`` (fibers and H restricted)."""
        sub, keep = self.base.induced(vertices)
        pos = {v: i for i, v in enumerate(keep)}
        matchings = {
            (pos[u], pos[v]): frozenset(pairs)
            for (u, v), pairs in self.matchings.items()
            if u in pos and v in pos and pairs
        }
        return Cover(sub, tuple(self.fiber_sizes[v] for v in keep), matchings), keep

    def delete_vertex(self, v: int) -> tuple[Cover, tuple[int, ...]]:
        return self.restrict(u for u in range(self.n) if u != v)

    def violation(self) -> tuple[tuple[int, int], str] | None:
        """First (edge, reason) breaking the matching conditions, or None."""
        if len(self.fiber_sizes) != self.base.n:
            return (-1, -1), "one fiber size per vertex required"
        if any(s < 0 for s in self.fiber_sizes):
            return (-1, -1), "negative fiber size"
        for e in sorted(self.matchings):
            u, v = e
            pairs = list(self.matchings[e])
            if u > v or not self.base.has_edge(u, v):
                return e, "matching on a pair that is not an edge u<v of the base graph"
            if len({i for i, _ in pairs}) != len(pairs):
                return e, "repeated first coordinate"
            if len({j for _, j in pairs}) != len(pairs):
                return e, "repeated second coordinate"
            for i, j in pairs:
                if not (0 <= i < self.fiber_sizes[u] and 0 <= j < self.fiber_sizes[v]):
                    return e, f"pair ({i},{j}) outside the fibers"
        return None

    def validate(self) -> bool:
        return self.violation() is None

    def is_k_cover(self, k: int) -> bool:
        return all(s >= k for s in self.fiber_sizes)


def make_cover(
    g: Graph,
    fiber_sizes: Sequence[int],
    matchings: Mapping[tuple[int, int], Iterable[Sequence[int]]] | None = None,
) -> Cover:
    """Build a cover, accepting matchings keyed in either orientation."""
    norm: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for (u, v), pairs in (matchings or {}).items():
        if u <= v:
            norm.setdefault((u, v), set()).update((int(i), int(j)) for i, j in pairs)
        else:
            norm.setdefault((v, u), set()).update((int(j), int(i)) for i, j in pairs)
    return Cover(g, tuple(int(s) for s in fiber_sizes), {e: frozenset(p) for e, p in norm.items()})


def identity_cover(g: Graph, k: int) -> Cover:
    """The k-cover associated with the constant list assignment ``[0, k)``."""
    full = frozenset((i, i) for i in range(k))
    return Cover(g, (k,) * g.n, {e: full for e in g.edges})


def cover_from_lists(g: Graph, lists: Sequence[Iterable]) -> Cover:
    """Cover associated with a list assignment: equal colours on adjacent vertices are joined."""
    fib = []
    for L in lists:
        seen: list = []
        for c in L:
            if c not in seen:
                seen.append(c)
        fib.append(seen)
    matchings = {}
    for u, v in g.edges:
        pos_v = {c: j for j, c in enumerate(fib[v])}
        matchings[(u, v)] = frozenset((i, pos_v[c]) for i, c in enumerate(fib[u]) if c in pos_v)
    return Cover(g, tuple(len(L) for L in fib), matchings)


@dataclass(frozen=True)
class Transversal:
    """Chosen fiber index per base vertex; ``None`` marks vertices outside the domain."""

    choice: tuple[int | None, ...]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(v for v, i in enumerate(self.choice) if i is not None)

    def is_partial(self) -> bool:
        return any(i is None for i in self.choice)

    def h_vertices(self, c: Cover) -> list[int]:
        return [c.hindex(v, i) for v, i in enumerate(self.choice) if i is not None]

    def mask(self, c: Cover) -> int:
        m = 0
        for x in self.h_vertices(c):
            m |= 1 << x
        return m


def search_order(g: Graph, skip: Iterable[int] = ()) -> list[int]:
    """Descending degree, lowest index first on ties."""
    skipped = set(skip)
    return sorted((v for v in range(g.n) if v not in skipped), key=lambda v: (-g.degree(v), v))


def is_P_transversal(c: Cover, p: PropertyOracle, t: Transversal) -> bool:
    return p.member(c.h_induced(t.h_vertices(c)))


def find_P_transversal(
    c: Cover, p: PropertyOracle, forbidden: int | None = None
) -> Transversal | None:
    """Exhaustive backtracking for a (partial, if ``forbidden``) P-transversal.

    The first solution in search order is returned, so results are
    deterministic.
    """
    order = search_order(c.base, () if forbidden is None else (forbidden,))
    if p.degeneracy is not None:
        fibers = [list(c.fiber(v)) for v in order]
        f = [p.degeneracy + 1] * c.num_h
        found = kernels.find_transversal(fibers, c.h_adjacency, f)
        if found is None:
            return None
        choice: list[int | None] = [None] * c.n
        for v, x in zip(order, found):
            choice[v] = x - c.offsets[v]
        return Transversal(tuple(choice))
    return _generic_search(c, p, order)


def _generic_search(c: Cover, p: PropertyOracle, order: list[int]) -> Transversal | None:
    chosen: list[int] = []

    def rec(d: int) -> bool:
        if d == len(order):
            return p.member(c.h_induced(chosen))
        for x in c.fiber(order[d]):
            chosen.append(x)
            if not p.hereditary or p.member(c.h_induced(chosen)):
                if rec(d + 1):
                    return True
            chosen.pop()
        return False

    if not rec(0):
        return None
    choice: list[int | None] = [None] * c.n
    for v, x in zip(order, chosen):
        choice[v] = x - c.offsets[v]
    return Transversal(tuple(choice))


def has_P_transversal(c: Cover, p: PropertyOracle) -> bool:
    return find_P_transversal(c, p) is not None


def is_P_critical_cover(c: Cover, p: PropertyOracle) -> bool:
    if find_P_transversal(c, p) is not None:
        return False
    return all(find_P_transversal(c, p, forbidden=v) is not None for v in range(c.n))


@dataclass(frozen=True)
class LowVertexSubgraph:
    low_set: frozenset[int]
    graph: Graph
    vertex_map: tuple[int, ...]  # index in ``graph`` -> base vertex


def low_vertex_subgraph(c: Cover, p: PropertyOracle) -> LowVertexSubgraph:
    """Vertices whose degree equals ``r * |X_v|``, and the subgraph they induce."""
    r = d_of(p)
    low = frozenset(v for v in range(c.n) if c.base.degree(v) == r * c.fiber_sizes[v])
    f, keep = c.base.induced(low)
    return LowVertexSubgraph(low, f, keep)


def fiber_contact_degrees(c: Cover, v: int, t: Transversal) -> list[int]:
    """``|N_H(x) ∩ T|`` for each x in the fiber of v."""
    tm = t.mask(c)
    return [(c.h_adjacency[x] & tm).bit_count() for x in c.fiber(v)]


def critical_subcover(c: Cover, p: PropertyOracle) -> tuple[Cover, tuple[int, ...]] | None:
    """Shrink a cover without P-transversal to a P-critical cover of an induced subgraph.

    Vertices are dropped greedily (lowest index first) while the restricted
    cover stays uncolourable. Returns None when ``c`` has a P-transversal.
    """
    if find_P_transversal(c, p) is not None:
        return None
    keep = list(range(c.n))
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            trial = [u for u in keep if u != v]
            sub, _ = c.restrict(trial)
            if find_P_transversal(sub, p) is None:
                keep = trial
                changed = True
                break
    return c.restrict(keep)
