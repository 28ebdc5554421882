"""Named fixtures and the desk-scale sweeps built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterable, Iterator

from . import kernels
from .chromatic import _cover_from_perms, _spanning_tree_first, iter_normalized_covers
from .config import Configuration
from .constructible import is_constructible
from .cover import Cover, cover_from_lists, critical_subcover, find_P_transversal, identity_cover, search_order
from .graph import (
    Graph,
    build_graph,
    complete_graph,
    connected_graphs,
    cycle_graph,
    path_graph,
    two_cliques_with_bridge,
)
from .properties import EDGELESS, PropertyOracle, d_of, parse_property
from .theorems import VerdictReport, gen_dirac, verify_brooks

# -- fixtures -------------------------------------------------------------------


def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return build_graph([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)], 5)


def named_graphs() -> dict[str, Graph]:
    out = {"P2": path_graph(2), "P3": path_graph(3), "bowtie": bowtie()}
    out.update({f"C{n}": cycle_graph(n) for n in range(3, 8)})
    out.update({f"K{n}": complete_graph(n) for n in range(1, 6)})
    out["K4+pendant"] = build_graph(list(complete_graph(4).edges) + [(3, 4)], 5)
    out["W4"] = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)] + [(4, v) for v in range(4)], 5)
    out["octahedron"] = build_graph(
        [(a, b) for a, b in itertools.combinations(range(6), 2) if b - a != 3], 6
    )
    out["two-K4"] = two_cliques_with_bridge(3)
    return out


SWEEP_GRAPHS = ("P2", "P3", "C3", "C4", "C5", "K4", "bowtie")


def twisted_cycle_cover(n: int) -> Cover:
    """Identity 2-cover of C_n with the last edge crossed."""
    g = cycle_graph(n)
    ident, swap = frozenset({(0, 0), (1, 1)}), frozenset({(0, 1), (1, 0)})
    matchings = {e: ident for e in g.edges}
    matchings[(0, n - 1)] = swap
    return Cover(g, (2,) * n, matchings)


def dirac_constant_cover(k: int = 3, split: tuple[int, int] = (1, 2)) -> Cover:
    d = gen_dirac(k, split)
    return cover_from_lists(d.graph, [range(1, k + 1)] * d.graph.n)


def two_clique_list_cover(k: int = 3) -> Cover:
    """Two K_{k+1} joined by the edge (0, k+1); its ends get [2, k+1], the rest [1, k]."""
    g = two_cliques_with_bridge(k)
    lists = [range(1, k + 1)] * g.n
    lists[0] = lists[k + 1] = range(2, k + 2)
    return cover_from_lists(g, lists)


# -- configuration sweep -----------------------------------------------------------


@dataclass
class ConfigSweepReport:
    configurations: int = 0
    uncolorable: int = 0
    constructible: int = 0
    discrepancies: list = field(default_factory=list)
    inexact_uncolorable: list = field(default_factory=list)

    def add(self, other: ConfigSweepReport) -> None:
        self.configurations += other.configurations
        self.uncolorable += other.uncolorable
        self.constructible += other.constructible
        self.discrepancies += other.discrepancies
        self.inexact_uncolorable += other.inexact_uncolorable


def _fiber_options(g: Graph, s: int, f_max: int) -> list[list[tuple[int, ...]]]:
    return [
        [fv for fv in itertools.product(range(f_max + 1), repeat=s) if sum(fv) >= g.degree(v)]
        for v in range(g.n)
    ]


def _sweep_cover(args: tuple[Cover, int]) -> ConfigSweepReport:
    """Check every degree-feasible f with values up to ``f_max`` on one cover.

    A configuration whose fiber sums are not all equal to the degrees is
    never constructible (the recognizer rejects it up front), so the
    recognizer only runs on exact-sum configurations.
    """
    cover, f_max = args
    g = cover.base
    rep = ConfigSweepReport()
    order = search_order(g)
    fibers = [list(cover.fiber(v)) for v in order]
    adj = cover.h_adjacency
    degrees = g.degrees
    for rows in itertools.product(*_fiber_options(g, cover.fiber_sizes[0], f_max)):
        flat = tuple(itertools.chain.from_iterable(rows))
        rep.configurations += 1
        colorable = kernels.find_transversal(fibers, adj, flat) is not None
        exact = all(sum(fv) == d for fv, d in zip(rows, degrees))
        if not colorable:
            rep.uncolorable += 1
            if not exact:
                rep.inexact_uncolorable.append(Configuration(cover, rows))
        constructible = exact and is_constructible(Configuration(cover, rows)) is not None
        rep.constructible += constructible
        if constructible == colorable:
            rep.discrepancies.append(Configuration(cover, rows))
    return rep


def iter_sweep_covers(g: Graph, s_max: int = 2) -> Iterator[Cover]:
    """Covers with all fibers of size s <= s_max, up to fiber relabelling."""
    for s in range(1, s_max + 1):
        yield from iter_normalized_covers(g, s)


def config_sweep(
    graphs: Iterable[Graph], s_max: int = 2, f_max: int = 2, workers: int = 1
) -> ConfigSweepReport:
    """Compare colourability with constructibility on every small degree-feasible configuration."""
    total = ConfigSweepReport()
    jobs = ((c, f_max) for g in graphs for c in iter_sweep_covers(g, s_max))
    if workers > 1:
        with Pool(workers) as pool:
            for rep in pool.imap(_sweep_cover, jobs, chunksize=64):
                total.add(rep)
    else:
        for job in jobs:
            total.add(_sweep_cover(job))
    return total


# -- Brooks sweep and the critical covers it yields ------------------------------------------


@lru_cache(maxsize=None)
def brooks_sweep(max_order: int, prop: str) -> tuple[tuple[Graph, VerdictReport], ...]:
    p = parse_property(prop)
    return tuple((g, verify_brooks(g, p)) for g in connected_graphs(max_order))


@lru_cache(maxsize=None)
def sweep_critical_covers(max_order: int, prop: str) -> tuple[Cover, ...]:
    """A P-critical subcover of every bad cover witnessed during the Brooks sweep."""
    p = parse_property(prop)
    out = []
    for _, rep in brooks_sweep(max_order, prop):
        bad = rep.witness
        if isinstance(bad, Cover) and bad.base.n > 0 and min(bad.fiber_sizes) > 0:
            sub = critical_subcover(bad, p)
            if sub is not None:
                out.append(sub[0])
    return tuple(out)


def fixture_critical_covers() -> list[tuple[str, Cover, PropertyOracle]]:
    """Hand-made P-critical covers."""
    out = [(f"K{n} identity", identity_cover(complete_graph(n), n - 1), EDGELESS) for n in range(2, 6)]
    out += [(f"C{n} identity", identity_cover(cycle_graph(n), 2), EDGELESS) for n in (3, 5, 7)]
    out += [(f"C{n} twisted", twisted_cycle_cover(n), EDGELESS) for n in (4, 6)]
    out.append(("Dir(3) constant", dirac_constant_cover(3), EDGELESS))
    out.append(("two-K4 lists", two_clique_list_cover(3), EDGELESS))
    return out


def meets_degree_precondition(c: Cover, p: PropertyOracle) -> bool:
    r = d_of(p)
    return all(r * c.fiber_sizes[v] >= c.base.degree(v) for v in range(c.n))


# -- open experiment -------------------------------------------------------------------


@dataclass(frozen=True)
class DiracScanReport:
    k: int
    split: tuple[int, int]
    scope: str
    covers: int
    bad_covers: int
    bad_twisted: int
    example: Cover | None


def dirac_cover_scan(k: int = 3, split: tuple[int, int] = (1, 2)) -> DiracScanReport:
    """Search Dir(k) for bad k-covers not associated with a list assignment.

    Scope: full matchings, identity on a spanning tree. Such a cover comes
    from a list assignment exactly when every other edge also carries the
    identity (the lists are then constant), so ``bad_twisted`` counts the
    bad covers with no list origin.
    """
    g = gen_dirac(k, split).graph
    edges, ntree = _spanning_tree_first(g)
    perms = list(itertools.permutations(range(k)))
    covers = bad = twisted = 0
    example = None
    for rest in itertools.product(range(len(perms)), repeat=len(edges) - ntree):
        covers += 1
        c = _cover_from_perms(g, k, edges, perms, (0,) * ntree + rest)
        if find_P_transversal(c, EDGELESS) is None:
            bad += 1
            if any(rest):
                twisted += 1
                example = example or c
    return DiracScanReport(k, split, "full matchings", covers, bad, twisted, example)

