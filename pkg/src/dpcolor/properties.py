"""Graph properties used as colour-class constraints.

A property is a membership predicate plus self-declared closure flags.
The two built-in families are the edgeless graphs ``O`` and the
k-degenerate graphs ``Dk``; both carry their exact ``d`` value and a
``degeneracy`` level, which lets the search kernels test membership by
peeling instead of calling the predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import SearchExhausted
from .graph import Graph, all_graphs, connected_graphs, disjoint_union


@dataclass(frozen=True)
class PropertyOracle:
    name: str
    member: Callable[[Graph], bool]
    hereditary: bool = True
    additive: bool = True
    monotone: bool = False
    d_value: int | None = None
    # j such that the property is "j-degenerate"; O is level 0
    degeneracy: int | None = None

    def __call__(self, g: Graph) -> bool:
        return self.member(g)

    @property
    def is_edgeless(self) -> bool:
        return self.degeneracy == 0


def _edgeless(g: Graph) -> bool:
    return g.num_edges == 0


EDGELESS = PropertyOracle(
    name="O", member=_edgeless, monotone=True, d_value=1, degeneracy=0
)


def degenerate(k: int) -> PropertyOracle:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return EDGELESS
    return PropertyOracle(
        name=f"D{k}",
        member=lambda g, k=k: g.is_k_degenerate(k),
        monotone=True,
        d_value=k + 1,
        degeneracy=k,
    )


def parse_property(token: str) -> PropertyOracle:
    """``O``, ``D0``, ``D1``, ... as accepted on the command line."""
    t = token.strip()
    if t == "O":
        return EDGELESS
    if len(t) >= 2 and t[0] == "D" and t[1:].isdigit():
        return degenerate(int(t[1:]))
    raise ValueError(f"unknown property token {token!r}; expected O or Dk")


def is_member(p: PropertyOracle, g: Graph) -> bool:
    return p.member(g)


def is_cr(p: PropertyOracle, g: Graph) -> bool:
    """Not in the property, but every vertex-deleted subgraph is."""
    if p.member(g):
        return False
    return all(p.member(g.delete_vertex(v)[0]) for v in range(g.n))


def d_of(p: PropertyOracle, search_order_limit: int = 5) -> int:
    """Minimum degree over the minimal non-members.

    Declared values are returned as-is. Otherwise the minimum is taken over
    connected graphs up to ``search_order_limit`` vertices, which is only an
    upper bound on the true value; see :func:`d_is_exact`.
    """
    if p.d_value is not None:
        return p.d_value
    best = None
    for g in connected_graphs(search_order_limit):
        if is_cr(p, g):
            best = g.min_degree if best is None else min(best, g.min_degree)
    if best is None:
        raise SearchExhausted(
            f"no minimal non-member of {p.name} with at most {search_order_limit} vertices"
        )
    return best


def d_is_exact(p: PropertyOracle) -> bool:
    return p.d_value is not None


def validate_coloring(p: PropertyOracle, g: Graph, coloring: Mapping[int, object] | list) -> bool:
    classes: dict[object, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(coloring[v], []).append(v)
    return all(p.member(g.induced(vs)[0]) for vs in classes.values())


def spot_check_flags(p: PropertyOracle, max_order: int = 5) -> list[str]:
    """Bounded check of the declared closure flags; returns violation notes."""
    problems: list[str] = []
    graphs = list(all_graphs(max_order))
    members = [g for g in graphs if p.member(g)]
    if p.hereditary:
        for g in members:
            for size in range(g.n):
                for sub in itertools.combinations(range(g.n), size):
                    if not p.member(g.induced(sub)[0]):
                        problems.append(f"hereditary fails: {g} -> induced {sub}")
                        break
    if p.monotone:
        for g in members:
            for e in g.edges:
                h = Graph(g.n, tuple(
                    a - {e[1]} if v == e[0] else a - {e[0]} if v == e[1] else a
                    for v, a in enumerate(g.adj)
                ))
                if not p.member(h):
                    problems.append(f"monotone fails: {g} minus edge {e}")
    if p.additive:
        for g1, g2 in itertools.combinations_with_replacement(members, 2):
            if g1.n + g2.n <= max_order and not p.member(disjoint_union(g1, g2)):
                problems.append(f"additive fails: {g1} + {g2}")
    return problems


def custom_property(
    name: str,
    member: Callable[[Graph], bool],
    *,
    hereditary: bool = True,
    additive: bool = True,
    monotone: bool = False,
    d_value: int | None = None,
) -> PropertyOracle:
    return PropertyOracle(name, member, hereditary, additive, monotone, d_value, None)


def triangle_free() -> PropertyOracle:
    def member(g: Graph) -> bool:
        return not any(
            w in g.adj[u]
            for u, v in g.edges
            for w in g.adj[v]
        )

    return custom_property("triangle-free", member, monotone=True)
