"""Exact P-chromatic, P-choice and P-DP-chromatic numbers of small graphs.

Everything here is exhaustive search with witnesses. Two shortcuts are used
and both are sound for the built-in properties:

* greedy certificate: if the degeneracy of G is below ``r*k`` (r the exact
  value of the property), every k-cover and every k-list assignment can be
  coloured greedily along a degeneracy order, because a vertex joining a
  colour class with fewer than r neighbours there keeps the class inside
  the property;
* symmetry: fiber relabelling normalizes spanning-tree matchings, and for
  monotone properties only full matchings need to be examined.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .cover import Cover, cover_from_lists, find_P_transversal
from .errors import SearchExhausted, TooLarge
from .graph import Graph, build_graph
from .properties import PropertyOracle, d_is_exact, d_of

DESK_LIMIT = 10
DP_ORDER_LIMIT = 7
DEFAULT_WORK = 200_000_000


def work_budget() -> int:
    """Node budget for cover enumeration; ``DPCOLOR_MAX_WORK`` overrides it."""
    raw = os.environ.get("DPCOLOR_MAX_WORK")
    return int(raw) if raw else DEFAULT_WORK


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    witness: object = None
    notes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Choosable:
    method: str


@dataclass(frozen=True)
class BadLists:
    lists: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AllCoverable:
    method: str
    nodes: int = 0


@dataclass(frozen=True)
class BadCover:
    cover: Cover
    nodes: int = 0


def _check_order(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise TooLarge(f"graph of order {g.n} exceeds the limit {limit}")


def _class_ok(p: PropertyOracle, g: Graph, members: Sequence[int]) -> bool:
    return p.member(g.induced(members)[0])


# -- P-chromatic number -------------------------------------------------------


def colorable_with(g: Graph, p: PropertyOracle, k: int) -> tuple[int, ...] | None:
    """A P-colouring with colours ``0..k-1``; colour c is opened only after c-1."""
    if g.n == 0:
        return ()
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colour = [-1] * g.n
    classes: list[list[int]] = [[] for _ in range(k)]

    def rec(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            classes[c].append(v)
            if not p.hereditary or _class_ok(p, g, classes[c]):
                colour[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
            classes[c].pop()
        return False

    if not rec(0, 0):
        return None
    if not p.hereditary and not all(_class_ok(p, g, cl) for cl in classes if cl):
        return None
    return tuple(colour)


def chi(g: Graph, p: PropertyOracle, limit: int = DESK_LIMIT) -> ChromaticResult:
    _check_order(g, limit)
    for k in range(g.n + 1):
        col = colorable_with(g, p, k)
        if col is not None:
            return ChromaticResult(k, col)
    raise SearchExhausted("no colouring found")  # pragma: no cover


# -- list colouring -------------------------------------------------------------


def list_coloring(
    g: Graph, p: PropertyOracle, lists: Sequence[Sequence[int]]
) -> tuple[int, ...] | None:
    """Direct backtracking for a (P, L)-colouring; independent of covers."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colour: list[int | None] = [None] * g.n

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for c in dict.fromkeys(lists[v]):
            colour[v] = c
            cls = [u for u in range(g.n) if colour[u] == c]
            if _class_ok(p, g, cls) and rec(i + 1):
                return True
            colour[v] = None
        return False

    return tuple(colour) if rec(0) else None  # type: ignore[arg-type]


def _greedy_certificate(g: Graph, p: PropertyOracle, k: int) -> bool:
    if not d_is_exact(p):
        return False
    return g.degeneracy < d_of(p) * k


def _footprint_assignments(n: int, k: int) -> Iterator[list[int]]:
    """Multisets of pairwise intersecting vertex masks covering each vertex k times.

    Each multiset is produced once, sorted by (lowest vertex, mask order)
    with large masks first, so the constant assignment comes first.
    """
    full = (1 << n) - 1
    by_low: list[list[int]] = [[] for _ in range(n)]
    for m in sorted(range(1, full + 1), key=lambda m: (-m.bit_count(), -m)):
        by_low[(m & -m).bit_length() - 1].append(m)
    cap = [k] * n
    chosen: list[int] = []

    def fits(m: int) -> bool:
        while m:
            low = m & -m
            if cap[low.bit_length() - 1] == 0:
                return False
            m ^= low
        return True

    def rec(low: int, start: int, remaining: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield list(chosen)
            return
        # masks through a saturated vertex no longer fit, so the lowest
        # vertex with spare capacity is the lowest vertex of the next mask
        need = next(v for v in range(n) if cap[v])
        if need != low:
            start = 0
        options = by_low[need]
        for idx in range(start, len(options)):
            m = options[idx]
            if not fits(m) or any(not (m & other) for other in chosen):
                continue
            for v in range(n):
                if (m >> v) & 1:
                    cap[v] -= 1
            chosen.append(m)
            yield from rec(need, idx, remaining - m.bit_count())
            chosen.pop()
            for v in range(n):
                if (m >> v) & 1:
                    cap[v] += 1

    yield from rec(-1, 0, n * k)


def lists_from_footprints(n: int, footprints: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(c for c, m in enumerate(footprints) if (m >> v) & 1) for v in range(n)
    )


def chi_list_decide(
    g: Graph, p: PropertyOracle, k: int, limit: int = DP_ORDER_LIMIT
) -> Choosable | BadLists:
    """Decide whether every k-list assignment admits a (P, L)-colouring.

    Two colours whose vertex sets are disjoint can be merged into one colour
    without making the assignment easier (for hereditary P), so only
    assignments whose colour footprints pairwise intersect are enumerated.
    """
    _check_order(g, limit)
    if g.n == 0:
        return Choosable("empty graph")
    if k <= 0:
        return BadLists(tuple(() for _ in range(g.n)))
    if _greedy_certificate(g, p, k):
        return Choosable("degeneracy")
    if not p.hereditary:
        raise TooLarge("list enumeration needs a hereditary property")
    for fps in _footprint_assignments(g.n, k):
        lists = lists_from_footprints(g.n, fps)
        if find_P_transversal(cover_from_lists(g, lists), p) is None:
            return BadLists(lists)
    return Choosable("enumeration")


def chi_list(g: Graph, p: PropertyOracle, limit: int = DP_ORDER_LIMIT) -> ChromaticResult:
    _check_order(g, limit)
    if g.n == 0:
        return ChromaticResult(0)
    last_bad = None
    for k in range(1, g.n + 1):
        res = chi_list_decide(g, p, k, limit)
        if isinstance(res, Choosable):
            return ChromaticResult(k, last_bad, {"method": res.method})
        last_bad = res.lists
    raise SearchExhausted("no k up to the order is choosable")  # pragma: no cover


# -- DP colouring -----------------------------------------------------------------


def _spanning_tree_first(g: Graph) -> tuple[list[tuple[int, int]], int]:
    """All edges as (u, v) with u < v, spanning-forest edges first."""
    tree = {(min(a, b), max(a, b)) for a, b in g.spanning_forest()}
    rest = [e for e in g.edges if e not in tree]
    return sorted(tree) + rest, len(tree)


def _conjugacy_representatives(perms: Sequence[tuple[int, ...]]) -> list[int]:
    """One permutation index per cycle type (conjugacy class of the symmetric group)."""
    seen: dict[tuple[int, ...], int] = {}
    for idx, perm in enumerate(perms):
        k = len(perm)
        done = [False] * k
        lengths = []
        for i in range(k):
            if not done[i]:
                ln, j = 0, i
                while not done[j]:
                    done[j] = True
                    j = perm[j]
                    ln += 1
                lengths.append(ln)
        seen.setdefault(tuple(sorted(lengths)), idx)
    return sorted(seen.values())


def _membership_table(g: Graph, edges: Sequence[tuple[int, int]], p: PropertyOracle) -> bytes:
    m = len(edges)
    if m > kernels.MAX_TABLE_EDGES:
        raise TooLarge(f"{m} edges exceed the cover-search limit {kernels.MAX_TABLE_EDGES}")
    if p.degeneracy is not None:
        f = [p.degeneracy + 1] * g.n
        out = bytearray(1 << m)
        full = (1 << g.n) - 1
        for mask in range(1 << m):
            adj = [0] * g.n
            mm = mask
            while mm:
                low = mm & -mm
                u, v = edges[low.bit_length() - 1]
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                mm ^= low
            out[mask] = kernels.strictly_degenerate(adj, f, full)
        return bytes(out)
    return bytes(
        p.member(build_graph([edges[i] for i in range(m) if (mask >> i) & 1], g.n))
        for mask in range(1 << m)
    )


def _cover_from_perms(
    g: Graph, k: int, edges: Sequence[tuple[int, int]], perms: Sequence[Sequence[int]], assign: Sequence[int]
) -> Cover:
    matchings = {
        e: frozenset((i, perms[a][i]) for i in range(k)) for e, a in zip(edges, assign)
    }
    return Cover(g, (k,) * g.n, matchings)


def _decide_monotone(g: Graph, p: PropertyOracle, k: int, budget: int) -> AllCoverable | BadCover:
    edges, ntree = _spanning_tree_first(g)
    perms = list(itertools.permutations(range(k)))  # index 0 is the identity
    table = _membership_table(g, edges, p)
    first = _conjugacy_representatives(perms) if ntree < len(edges) else None
    status, assign, nodes = kernels.dp_cover_search(
        g.n, k, edges, [0] * ntree, table, perms, first, budget
    )
    if status == 2:
        raise SearchExhausted(f"cover search exceeded {budget} nodes")
    if status == 1:
        return BadCover(_cover_from_perms(g, k, edges, perms, assign), nodes)
    return AllCoverable("enumeration", nodes)


def partial_matchings(k: int) -> list[frozenset[tuple[int, int]]]:
    """Every partial matching between two k-sets."""
    out = []
    for size in range(k + 1):
        for left in itertools.combinations(range(k), size):
            for right in itertools.permutations(range(k), size):
                out.append(frozenset(zip(left, right)))
    return out


def _sub_identities(k: int) -> list[frozenset[tuple[int, int]]]:
    return [
        frozenset((i, i) for i in sub)
        for size in range(k + 1)
        for sub in itertools.combinations(range(k), size)
    ]


def _tree_oriented(g: Graph) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Spanning-forest edges as (parent, child) and the remaining edges (u < v)."""
    tree = g.spanning_forest()
    keys = {(min(a, b), max(a, b)) for a, b in tree}
    return tree, [e for e in g.edges if e not in keys]


def iter_normalized_covers(g: Graph, k: int) -> Iterator[Cover]:
    """k-covers with partial matchings, up to fiber relabelling.

    Relabelling the child fiber of each spanning-forest edge turns its
    matching into a sub-identity, so only those are generated there.
    """
    tree, rest = _tree_oriented(g)
    subs, pms = _sub_identities(k), partial_matchings(k)
    for tchoice in itertools.product(subs, repeat=len(tree)):
        for rchoice in itertools.product(pms, repeat=len(rest)):
            matchings = {}
            for (a, b), m in zip(tree, tchoice):
                matchings[(a, b) if a < b else (b, a)] = m
            for e, m in zip(rest, rchoice):
                matchings[e] = m
            yield Cover(g, (k,) * g.n, matchings)


def iter_all_covers(g: Graph, k: int) -> Iterator[Cover]:
    """Every k-cover with fibers of size exactly k (no symmetry reduction)."""
    pms = partial_matchings(k)
    for choice in itertools.product(pms, repeat=len(g.edges)):
        yield Cover(g, (k,) * g.n, dict(zip(g.edges, choice)))


def _decide_by_listing(covers: Iterator[Cover], p: PropertyOracle, budget: int) -> AllCoverable | BadCover:
    count = 0
    for c in covers:
        count += 1
        if budget and count > budget:
            raise SearchExhausted(f"cover listing exceeded {budget} covers")
        if find_P_transversal(c, p) is None:
            return BadCover(c, count)
    return AllCoverable("listing", count)


def chi_dp_decide(
    g: Graph,
    p: PropertyOracle,
    k: int,
    limit: int = DP_ORDER_LIMIT,
    engine: str = "auto",
) -> AllCoverable | BadCover:
    """Decide whether every k-cover of g has a P-transversal.

    ``engine``: ``"auto"`` (certificate, then the reduced search), ``"reduced"``
    (symmetry-reduced search without the certificate), ``"partial"``
    (listing of tree-normalized partial-matching covers) or ``"raw"``
    (listing of every cover).
    """
    _check_order(g, limit)
    budget = work_budget()
    if g.n == 0:
        return AllCoverable("empty graph")
    if k <= 0:
        return BadCover(Cover(g, (0,) * g.n, {}))
    if engine == "raw":
        return _decide_by_listing(iter_all_covers(g, k), p, budget)
    if engine == "partial":
        return _decide_by_listing(iter_normalized_covers(g, k), p, budget)
    if engine == "auto" and _greedy_certificate(g, p, k):
        return AllCoverable("degeneracy")
    if p.monotone:
        return _decide_monotone(g, p, k, budget)
    return _decide_by_listing(iter_normalized_covers(g, k), p, budget)


def chi_dp(g: Graph, p: PropertyOracle, limit: int = DP_ORDER_LIMIT) -> ChromaticResult:
    """Least k with every k-cover colourable; the witness is a bad (k-1)-cover."""
    _check_order(g, limit)
    if g.n == 0:
        return ChromaticResult(0)
    bad: BadCover | None = None
    for k in range(1, g.n + 1):
        res = chi_dp_decide(g, p, k, limit)
        if isinstance(res, AllCoverable):
            notes = {"method": res.method, "nodes": res.nodes}
            if bad is not None:
                notes["bad_cover_at_k"] = k - 1
            return ChromaticResult(k, None if bad is None else bad.cover, notes)
        bad = res
    raise SearchExhausted("no k up to the order works")  # pragma: no cover


@dataclass(frozen=True)
class ChainReport:
    chi: int
    chi_list: int
    chi_dp: int

    @property
    def holds(self) -> bool:
        return self.chi <= self.chi_list <= self.chi_dp


def chain(g: Graph, p: PropertyOracle, limit: int = DP_ORDER_LIMIT) -> ChainReport:
    return ChainReport(chi(g, p).value, chi_list(g, p, limit).value, chi_dp(g, p, limit).value)


# -- criticality -----------------------------------------------------------------


def is_dp_critical(g: Graph, p: PropertyOracle, limit: int = DP_ORDER_LIMIT) -> bool:
    """Every vertex-deleted subgraph has a smaller P-DP-chromatic number."""
    value = chi_dp(g, p, limit).value
    return all(chi_dp(g.delete_vertex(v)[0], p, limit).value < value for v in range(g.n))


def critical_core(
    g: Graph, p: PropertyOracle, limit: int = DP_ORDER_LIMIT
) -> tuple[Graph, tuple[int, ...]]:
    """A minimum-order induced subgraph with the same P-DP-chromatic number.

    Returns the subgraph and the map from its vertices to those of ``g``.
    """
    _check_order(g, limit)
    target = chi_dp(g, p, limit).value
    for size in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            h, keep = g.induced(sub)
            if chi_dp(h, p, limit).value == target:
                return h, keep
    return g, tuple(range(g.n))  # pragma: no cover
