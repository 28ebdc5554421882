"""Simple undirected graphs on dense vertex indices ``0..n-1``.

Block decomposition and graph6 are delegated to networkx; everything the
rest of the package leans on in inner loops (induced subgraphs, degrees,
degeneracy peeling) is native.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import InvalidGraph, ParseError


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise InvalidGraph("adjacency length does not match n")

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph plus the map from its indices back to ours."""
        keep = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(keep)}
        adj = tuple(frozenset(pos[w] for w in self.adj[v] if w in pos) for v in keep)
        return Graph(len(keep), adj), keep

    def delete_vertex(self, v: int) -> tuple[Graph, tuple[int, ...]]:
        return self.induced(u for u in range(self.n) if u != v)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def is_complete(self) -> bool:
        return all(len(a) == self.n - 1 for a in self.adj)

    def is_cycle(self) -> bool:
        return self.n >= 3 and all(len(a) == 2 for a in self.adj) and self.is_connected()

    def regular_degree(self) -> int | None:
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None

    def degeneracy_order(self) -> tuple[list[int], int]:
        """Min-degree peeling, lowest index on ties.

        Returns the removal order and the degeneracy (largest degree seen at
        removal time).
        """
        deg = list(self.degrees)
        alive = [True] * self.n
        order: list[int] = []
        worst = 0
        for _ in range(self.n):
            v = min((u for u in range(self.n) if alive[u]), key=lambda u: (deg[u], u))
            worst = max(worst, deg[v])
            alive[v] = False
            order.append(v)
            for w in self.adj[v]:
                if alive[w]:
                    deg[w] -= 1
        return order, worst

    @property
    def degeneracy(self) -> int:
        return self.degeneracy_order()[1]

    def is_k_degenerate(self, k: int) -> bool:
        return self.n == 0 or self.degeneracy <= k

    @cached_property
    def blocks(self) -> BlockDecomposition:
        return block_decomposition(self)

    def spanning_forest(self) -> list[tuple[int, int]]:
        """BFS forest edges (parent, child) from the lowest vertex of each component."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            queue = [s]
            for u in queue:
                for w in sorted(self.adj[u]):
                    if not seen[w]:
                        seen[w] = True
                        out.append((u, w))
                        queue.append(w)
        return out

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def build_graph(edges: Iterable[Sequence[int]], n: int) -> Graph:
    if n < 0:
        raise InvalidGraph("negative vertex count")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraph(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise InvalidGraph(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in nbrs))


def from_networkx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return build_graph(((pos[u], pos[v]) for u, v in g.edges()), len(nodes))


def complete_graph(n: int) -> Graph:
    return build_graph(itertools.combinations(range(n), 2), n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidGraph("a cycle needs at least 3 vertices")
    return build_graph(((i, (i + 1) % n) for i in range(n)), n)


def path_graph(n: int) -> Graph:
    return build_graph(((i, i + 1) for i in range(n - 1)), n)


def empty_graph(n: int) -> Graph:
    return build_graph([], n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return build_graph(edges, off)


def two_cliques_with_bridge(k: int) -> Graph:
    """Two disjoint K_{k+1} joined by the edge (0, k+1)."""
    a = list(itertools.combinations(range(k + 1), 2))
    b = [(u + k + 1, v + k + 1) for u, v in a]
    return build_graph(a + b + [(0, k + 1)], 2 * k + 2)


# -- blocks ------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_decomposition(g: Graph) -> BlockDecomposition:
    ng = g.to_networkx()
    blocks = [frozenset(c) for c in nx.biconnected_components(ng)]
    covered = set().union(*blocks) if blocks else set()
    blocks.extend(frozenset([v]) for v in range(g.n) if v not in covered)
    blocks.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(blocks), frozenset(nx.articulation_points(ng)))


@dataclass(frozen=True)
class BlockClass:
    kind: str  # "Complete" | "Cycle" | "Other"
    max_degree: int
    regular_degree: int | None


def classify_block(g: Graph, block: Iterable[int]) -> BlockClass:
    sub, _ = g.induced(block)
    reg = sub.regular_degree() if sub.n else 0
    if sub.is_complete():
        kind = "Complete"
    elif sub.is_cycle():
        kind = "Cycle"
    else:
        kind = "Other"
    return BlockClass(kind, sub.max_degree, reg)


# -- enumeration ---------------------------------------------------------------


def connected_graphs(max_order: int, min_order: int = 1) -> Iterator[Graph]:
    """All connected graphs up to isomorphism with the given order range (max 7)."""
    if max_order > 7:
        raise ValueError("the graph atlas only covers orders up to 7")
    for h in nx.graph_atlas_g():
        if min_order <= h.number_of_nodes() <= max_order and (
            h.number_of_nodes() == 0 or nx.is_connected(h)
        ):
            yield from_networkx(h)


def all_graphs(max_order: int) -> Iterator[Graph]:
    """Every graph (connected or not) up to isomorphism, order 0..max_order."""
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() <= max_order:
            yield from_networkx(h)


def labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield build_graph((p for i, p in enumerate(pairs) if bits >> i & 1), n)


# -- text formats --------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), nodes=list(range(g.n)), header=False).decode().strip()


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        return from_networkx(nx.from_graph6_bytes(s.encode("ascii")))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise ParseError(f"malformed graph6 string: {exc}", "line 1") from exc


def to_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [(i + 1, ln.split("#")[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty edge list", "line 1")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected vertex count, got {head!r}", f"line {lineno}") from None
    edges = []
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {ln!r}", f"line {lineno}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"non-integer vertex in {ln!r}", f"line {lineno}") from None
    try:
        return build_graph(edges, n)
    except InvalidGraph as exc:
        raise ParseError(str(exc), f"line {lineno}") from exc


def parse_graph(text: str) -> Graph:
    """Accept either the edge-list format or graph6, deciding from the first line."""
    first = text.strip().splitlines()[0].strip() if text.strip() else ""
    if first.isdigit():
        return from_edge_list(text)
    return from_graph6(first)
