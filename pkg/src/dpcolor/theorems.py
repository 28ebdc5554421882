"""Executable checks for the structural and extremal results on covers.

Each check returns a :class:`VerdictReport`. Bound arithmetic is exact
(``fractions.Fraction``); equality is reported separately from strict
inequality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .chromatic import chi_dp, is_dp_critical
from .cover import Cover, find_P_transversal, is_P_critical_cover, low_vertex_subgraph
from .errors import BadSplit, NotCritical, PreconditionFailed
from .graph import Graph, build_graph, classify_block, to_graph6
from .properties import PropertyOracle, d_of, is_cr

BlockKind = Literal["Complete", "Cycle", "RRegularCR", "LowDegreeMember"]
ExceptionClass = Literal["CompleteGraph", "RRegularCR", "Cycle"]


@dataclass(frozen=True)
class VerdictReport:
    theorem_id: str
    inputs_digest: str
    holds: bool
    exception_class: str | None = None
    numbers: dict = field(default_factory=dict)
    witness: object = None


def _digest(g: Graph, p: PropertyOracle, **extra) -> str:
    parts = [f"graph6={to_graph6(g)}", f"property={p.name}"]
    parts += [f"{k}={v}" for k, v in sorted(extra.items())]
    return " ".join(parts)


def classify_four_way(block: Graph, p: PropertyOracle) -> BlockKind | None:
    """Which of the four admissible block shapes ``block`` has, if any."""
    r = d_of(p)
    kind = classify_block(block, range(block.n)).kind
    if kind == "Complete":
        return "Complete"
    if kind == "Cycle":
        return "Cycle"
    if block.regular_degree() == r and is_cr(p, block):
        return "RRegularCR"
    if p.member(block) and block.max_degree <= r:
        return "LowDegreeMember"
    return None


def _classify_blocks(g: Graph, p: PropertyOracle) -> list[dict]:
    out = []
    for block in g.blocks.blocks:
        sub, keep = g.induced(sorted(block))
        out.append({"vertices": list(keep), "class": classify_four_way(sub, p)})
    return out


def verify_low_vertex_blocks(c: Cover, p: PropertyOracle) -> VerdictReport:
    """Every block of the low-vertex subgraph of a P-critical cover has an admissible shape."""
    if not is_P_critical_cover(c, p):
        raise NotCritical("the cover is not P-critical")
    low = low_vertex_subgraph(c, p)
    blocks = _classify_blocks(low.graph, p)
    for b in blocks:
        b["vertices"] = [low.vertex_map[v] for v in b["vertices"]]
    holds = all(b["class"] is not None for b in blocks)
    return VerdictReport(
        "low-vertex-blocks",
        _digest(c.base, p, fibers=list(c.fiber_sizes)),
        holds,
        numbers={"low_vertices": sorted(low.low_set), "r": d_of(p)},
        witness=blocks,
    )


def brooks_exception(g: Graph, p: PropertyOracle) -> ExceptionClass | None:
    """First applicable exception, tested in the order complete, regular CR, cycle."""
    r = d_of(p)
    if g.is_complete() and (g.n - 1) % r == 0:
        return "CompleteGraph"
    if g.regular_degree() == r and is_cr(p, g):
        return "RRegularCR"
    if p.is_edgeless and g.is_cycle():
        return "Cycle"
    return None


def verify_brooks(g: Graph, p: PropertyOracle) -> VerdictReport:
    if g.n == 0 or not g.is_connected():
        raise PreconditionFailed("a connected nonempty graph is required")
    r = d_of(p)
    res = chi_dp(g, p)
    bound = math.ceil(Fraction(g.max_degree, r))
    exc = brooks_exception(g, p)
    within = res.value <= bound
    return VerdictReport(
        "brooks",
        _digest(g, p),
        within or exc is not None,
        exc,
        {"chi_dp": res.value, "bound": bound, "max_degree": g.max_degree, "r": r,
         "within_bound": within},
        res.witness,
    )


def verify_ert(g: Graph, c: Cover, p: PropertyOracle) -> VerdictReport:
    """If a cover with ``r|X_v| >= d(v)`` is not colourable, every block has an admissible shape."""
    if g.n == 0 or not g.is_connected():
        raise PreconditionFailed("a connected nonempty graph is required")
    if c.base != g:
        raise PreconditionFailed("the cover is not a cover of the given graph")
    r = d_of(p)
    short = [v for v in range(g.n) if r * c.fiber_sizes[v] < g.degree(v)]
    if short:
        raise PreconditionFailed(f"r*|X_v| < d(v) at vertices {short}")
    t = find_P_transversal(c, p)
    digest = _digest(g, p, fibers=list(c.fiber_sizes))
    if t is not None:
        return VerdictReport("ert", digest, True, numbers={"colorable": True}, witness=list(t.choice))
    blocks = _classify_blocks(g, p)
    return VerdictReport(
        "ert",
        digest,
        all(b["class"] is not None for b in blocks),
        numbers={"colorable": False},
        witness=blocks,
    )


# -- edge bounds ----------------------------------------------------------------


def gallai_bound(k: int, r: int, n: int) -> Fraction:
    p = k * r
    den = (p + 1) ** 2 - 3
    return (p + Fraction(p - 2, den)) * n + Fraction(2 * p, den)


def dirac_bound(k: int, n: int) -> int:
    return k * n + k - 2


def mihok_value(p: int, f: Graph) -> Fraction:
    return (p - 1 + Fraction(2, p)) * f.n - 2 * f.num_edges


def contains_clique(g: Graph, size: int) -> bool:
    if size <= 1:
        return g.n >= size
    cand = [v for v in range(g.n) if g.degree(v) >= size - 1]
    for sub in itertools.combinations(cand, size):
        if all(g.has_edge(a, b) for a, b in itertools.combinations(sub, 2)):
            return True
    return False


def _require_critical(g: Graph, p: PropertyOracle, k: int, cover: Cover | None) -> str:
    if k < 3:
        raise PreconditionFailed("k >= 3 is required")
    if cover is not None:
        if cover.base != g or not cover.is_k_cover(k) or not is_P_critical_cover(cover, p):
            raise PreconditionFailed("not a P-critical k-cover of the graph")
        return "critical-cover"
    if chi_dp(g, p).value != k + 1 or not is_dp_critical(g, p):
        raise PreconditionFailed("the graph is not DP-critical with value k+1")
    return "dp-critical-graph"


def check_edge_bounds(
    g: Graph,
    p: PropertyOracle,
    k: int,
    mode: Literal["Gallai", "Dirac", "Mihok"],
    cover: Cover | None = None,
) -> VerdictReport:
    """Compare ``2|E|`` with the exact rational bound of the chosen mode.

    Gallai and Dirac need a certified context: either ``cover`` is a
    P-critical k-cover of ``g``, or (without a cover) ``g`` is DP-critical
    with value k+1. For Mihok, ``k`` is the degree parameter and ``g`` the
    graph F itself.
    """
    two_e = 2 * g.num_edges
    if mode == "Mihok":
        if g.n == 0 or k < 1:
            raise PreconditionFailed("a nonempty graph and p >= 1 are required")
        if g.max_degree > k:
            raise PreconditionFailed(f"maximum degree {g.max_degree} exceeds p={k}")
        for block in g.blocks.blocks:
            sub, _ = g.induced(sorted(block))
            if sub.max_degree >= k:
                raise PreconditionFailed(f"block {sorted(block)} has maximum degree >= p")
        value = mihok_value(k, g)
        return VerdictReport(
            "mihok", _digest(g, p, p_param=k), value >= 2, None,
            {"lhs": value, "rhs": Fraction(2), "equality": value == 2},
        )

    r = d_of(p)
    context = _require_critical(g, p, k, cover)
    if mode == "Gallai":
        bound = gallai_bound(k, r, g.n)
        exempt = g.is_complete() and g.n == k * r + 1
        exc = "CompleteGraph" if exempt else None
        return VerdictReport(
            "gallai", _digest(g, p, k=k), exempt or two_e >= bound, exc,
            {"lhs": Fraction(two_e), "rhs": bound, "equality": two_e == bound,
             "strict": two_e > bound, "r": r, "context": context},
        )
    if mode == "Dirac":
        if not p.is_edgeless:
            raise PreconditionFailed("the Dirac bound is stated for the edgeless property")
        bound = dirac_bound(k, g.n)
        has_clique = contains_clique(g, k + 1)
        member = is_dirac(g, k) is not None
        return VerdictReport(
            "dirac", _digest(g, p, k=k), has_clique or two_e >= bound,
            "CompleteGraph" if has_clique else None,
            {"lhs": two_e, "rhs": bound, "equality": two_e == bound,
             "strict": two_e > bound, "in_family": member, "context": context},
        )
    raise ValueError(f"unknown mode {mode!r}")


# -- the Dirac family -----------------------------------------------------------------


@dataclass(frozen=True)
class DiracGraph:
    k: int
    graph: Graph
    A: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]
    v1: int
    v2: int


def gen_dirac(k: int, split: tuple[int, int]) -> DiracGraph:
    """Vertices: A first, then B1, B2, v1, v2."""
    b1, b2 = split
    if k < 3 or b1 < 1 or b2 < 1 or b1 + b2 != k:
        raise BadSplit(f"split {split} must be two positive parts summing to k={k} (k >= 3)")
    A = list(range(k - 1))
    B1 = list(range(k - 1, k - 1 + b1))
    B2 = list(range(k - 1 + b1, 2 * k - 1))
    v1, v2 = 2 * k - 1, 2 * k
    edges = list(itertools.combinations(A, 2)) + list(itertools.combinations(B1 + B2, 2))
    edges += [(v1, u) for u in A + B1] + [(v2, u) for u in A + B2]
    g = build_graph(edges, 2 * k + 1)
    return DiracGraph(k, g, frozenset(A), frozenset(B1), frozenset(B2), v1, v2)


def is_dirac(g: Graph, k: int) -> DiracGraph | None:
    """Certificate of membership in the Dirac family, found by trying every pair v1, v2."""
    if k < 3 or g.n != 2 * k + 1 or g.num_edges != k * k + k - 1:
        return None

    def clique(vs: frozenset[int]) -> bool:
        return all(g.has_edge(a, b) for a, b in itertools.combinations(sorted(vs), 2))

    for v1, v2 in itertools.combinations(range(g.n), 2):
        if g.has_edge(v1, v2):
            continue
        A = g.adj[v1] & g.adj[v2]
        B1, B2 = g.adj[v1] - A, g.adj[v2] - A
        if len(A) != k - 1 or not B1 or not B2 or len(B1) + len(B2) != k:
            continue
        if len(A) + len(B1) + len(B2) + 2 != g.n:
            continue
        B = B1 | B2
        if not clique(A) or not clique(B):
            continue
        if any(g.adj[a] & B for a in A):
            continue
        return DiracGraph(k, g, frozenset(A), frozenset(B1), frozenset(B2), v1, v2)
    return None
