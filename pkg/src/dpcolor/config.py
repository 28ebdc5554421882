"""Configurations ``(G, X, H, f)``: a cover plus a non-negative integer on each H-vertex.

A transversal colours the configuration when the subgraph of H it induces
is strictly f-degenerate, i.e. repeatedly deleting a vertex whose current
degree is below its f-value empties it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .cover import Cover, Transversal, search_order
from .errors import InvalidPivot, ReductionUnsound


@dataclass(frozen=True)
class Configuration:
    cover: Cover
    f: tuple[tuple[int, ...], ...]  # f[v][i] for the i-th vertex of X_v

    def __post_init__(self) -> None:
        if len(self.f) != self.cover.n or any(
            len(fv) != s for fv, s in zip(self.f, self.cover.fiber_sizes)
        ):
            raise ValueError("f must give one value per H-vertex")
        if any(val < 0 for fv in self.f for val in fv):
            raise ValueError("f takes non-negative values")

    @property
    def base(self):
        return self.cover.base

    @cached_property
    def f_flat(self) -> tuple[int, ...]:
        return tuple(val for fv in self.f for val in fv)

    def value(self, v: int, i: int) -> int:
        return self.f[v][i]

    def fiber_sum(self, v: int) -> int:
        return sum(self.f[v])

    def delete_vertex(self, u: int) -> tuple[Configuration, tuple[int, ...]]:
        """``(G-u, X-u, H-u, f)``; the map sends new indices to old ones."""
        sub, keep = self.cover.delete_vertex(u)
        return Configuration(sub, tuple(self.f[v] for v in keep)), keep

    def restrict(self, vertices: Iterable[int]) -> tuple[Configuration, tuple[int, ...]]:
        sub, keep = self.cover.restrict(vertices)
        return Configuration(sub, tuple(self.f[v] for v in keep)), keep


def make_config(
    cover: Cover, f: Mapping[tuple[int, int], int] | Sequence[Sequence[int]]
) -> Configuration:
    if isinstance(f, Mapping):
        rows = [[0] * s for s in cover.fiber_sizes]
        for (v, i), val in f.items():
            rows[v][i] = int(val)
        return Configuration(cover, tuple(tuple(r) for r in rows))
    return Configuration(cover, tuple(tuple(int(x) for x in fv) for fv in f))


def _mask_of(c: Configuration, hset: Iterable) -> int:
    m = 0
    for x in hset:
        if isinstance(x, tuple):
            x = c.cover.hindex(*x)
        m |= 1 << x
    return m


def is_strictly_f_degenerate(c: Configuration, hset: Iterable) -> bool:
    """H-vertices may be given as flat indices or ``(v, i)`` addresses."""
    return kernels.strictly_degenerate(c.cover.h_adjacency, c.f_flat, _mask_of(c, hset))


def is_degree_feasible(c: Configuration) -> bool:
    return all(c.fiber_sum(v) >= c.base.degree(v) for v in range(c.base.n))


def normalize(c: Configuration) -> Configuration:
    """Pad every fiber to the largest size with isolated vertices of f-value 0."""
    if not c.cover.fiber_sizes:
        return c
    s = max(c.cover.fiber_sizes)
    if all(size == s for size in c.cover.fiber_sizes):
        return c
    cover = Cover(c.base, (s,) * c.base.n, dict(c.cover.matchings))
    return Configuration(cover, tuple(fv + (0,) * (s - len(fv)) for fv in c.f))


def reduce(c: Configuration, v: int, x: int) -> Configuration:
    """Delete ``v`` after fixing its colour to ``(v, x)``.

    H-neighbours of the pivot lose one unit of f (floored at 0). The new
    graph keeps the remaining vertices in their original order.
    """
    if v in c.base.blocks.cut_vertices:
        raise ReductionUnsound(f"vertex {v} separates the graph")
    if not 0 <= x < c.cover.fiber_sizes[v] or c.f[v][x] <= 0:
        raise InvalidPivot(f"pivot ({v},{x}) needs a positive f-value")
    pivot = c.cover.hindex(v, x)
    nbrs = set(c.cover.h_neighbors(pivot))
    sub, keep = c.cover.delete_vertex(v)
    f = tuple(
        tuple(
            max(0, val - 1) if c.cover.hindex(old, i) in nbrs else val
            for i, val in enumerate(c.f[old])
        )
        for old in keep
    )
    return Configuration(sub, f)


def _to_transversal(c: Configuration, order: list[int], chosen: list[int]) -> Transversal:
    choice: list[int | None] = [None] * c.base.n
    for v, x in zip(order, chosen):
        choice[v] = x - c.cover.offsets[v]
    return Transversal(tuple(choice))


def solve(c: Configuration, engine: str = "exhaustive") -> Transversal | None:
    """A transversal inducing a strictly f-degenerate subgraph, or None.

    ``engine="reduction"`` first tries to build a solution by peeling off
    non-separating vertices; it always falls back to the exhaustive search,
    so both engines agree on colourability.
    """
    if engine == "reduction":
        return solve_by_reduction(c)
    if engine != "exhaustive":
        raise ValueError(f"unknown engine {engine!r}")
    order = search_order(c.base)
    fibers = [list(c.cover.fiber(v)) for v in order]
    found = kernels.find_transversal(fibers, c.cover.h_adjacency, c.f_flat)
    return None if found is None else _to_transversal(c, order, found)


def is_colorable(c: Configuration) -> bool:
    return solve(c) is not None


def solve_by_reduction(c: Configuration) -> Transversal | None:
    if c.base.is_connected() and is_degree_feasible(c):
        t = _reduction_attempt(c)
        if t is not None:
            return t
    return solve(c)


def _reduction_attempt(c: Configuration) -> Transversal | None:
    g = c.base
    if g.n == 0:
        return Transversal(())
    cut = g.blocks.cut_vertices
    v = min((u for u in range(g.n) if u not in cut), key=lambda u: (-g.degree(u), u))
    for i in range(c.cover.fiber_sizes[v]):
        if c.f[v][i] <= 0:
            continue
        sub = _reduction_attempt(reduce(c, v, i))
        if sub is None:
            continue
        choice = list(sub.choice)
        choice.insert(v, i)
        t = Transversal(tuple(choice))
        if is_strictly_f_degenerate(c, t.h_vertices(c.cover)):
            return t
    return None


def iter_solutions(c: Configuration) -> Iterator[Transversal]:
    """Every colouring transversal, in lexicographic order of fiber indices."""
    adj, f = c.cover.h_adjacency, c.f_flat
    for choice in itertools.product(*(range(s) for s in c.cover.fiber_sizes)):
        t = Transversal(choice)
        if kernels.strictly_degenerate(adj, f, t.mask(c.cover)):
            yield t
