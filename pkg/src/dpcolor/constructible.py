"""Constructible configurations: the (M), (K) and (C) block patterns, merging,
and a recognizer that works block by block.

A connected configuration is constructible exactly when every block carries
one of the three patterns under some splitting of f at the cut vertices.
The recognizer searches those splittings with backtracking over the cut
vertices and tests each block as soon as all of its cut vertices are fixed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from .config import Configuration, normalize
from .cover import Cover
from .errors import BadBijection, BadPartition, NotABlock, ParityMismatch
from .graph import Graph, build_graph, complete_graph, cycle_graph

Tag = Literal["M", "K", "C"]


def _is_block(g: Graph) -> bool:
    if g.n == 0:
        return False
    return g.is_connected() and not g.blocks.cut_vertices


def _config(g: Graph, s: int, matchings: dict, f: Sequence[Sequence[int]]) -> Configuration:
    cover = Cover(g, (s,) * g.n, {e: frozenset(p) for e, p in matchings.items()})
    return Configuration(cover, tuple(tuple(fv) for fv in f))


def build_m(g: Graph, s: int, embedding: Sequence[int] | None = None) -> Configuration:
    """(M)-configuration: one positive vertex per fiber, valued at its degree,
    and the positive vertices span a copy of ``g``."""
    if not _is_block(g):
        raise NotABlock("the base graph of an (M)-configuration must be a block")
    if s < 1:
        raise ValueError("fiber size must be at least 1")
    emb = [0] * g.n if embedding is None else list(embedding)
    if len(emb) != g.n or any(not 0 <= i < s for i in emb):
        raise ValueError("embedding needs one fiber index in [0, s) per vertex")
    matchings = {(u, v): {(emb[u], emb[v])} for u, v in g.edges}
    f = [[g.degree(v) if i == emb[v] else 0 for i in range(s)] for v in range(g.n)]
    return _config(g, s, matchings, f)


def build_k(n: int, t: Sequence[int], s: int) -> Configuration:
    """(K)-configuration on K_n: slot i carries f = t[i] and slot-preserving
    matchings make every slot class a clique."""
    t = list(t)
    if n < 1 or any(ti < 1 for ti in t) or sum(t) != n - 1:
        raise BadPartition(f"parts {t} must be positive and sum to {n - 1}")
    if len(t) > s:
        raise BadPartition(f"{len(t)} parts do not fit in fibers of size {s}")
    g = complete_graph(n)
    ident = {(i, i) for i in range(s)}
    f = [[t[i] if i < len(t) else 0 for i in range(s)] for _ in range(n)]
    return _config(g, s, {e: ident for e in g.edges}, f)


def build_c(n: int, s: int, twist: str) -> Configuration:
    """(C)-configuration on C_n with slots 0 and 1 positive.

    For odd n the positive vertices form two disjoint n-cycles; for even n
    the closing edge swaps the two slots so they form one 2n-cycle.
    """
    parity = twist.lower()
    if parity not in ("odd", "even"):
        raise ValueError("twist is 'odd' or 'even'")
    if n < 3 or s < 2:
        raise ValueError("need n >= 3 and s >= 2")
    if (n % 2 == 1) != (parity == "odd"):
        raise ParityMismatch(f"twist {twist!r} does not match cycle order {n}")
    g = cycle_graph(n)
    ident = {(i, i) for i in range(s)}
    matchings = {e: set(ident) for e in g.edges}
    if parity == "even":
        matchings[(0, n - 1)] = (ident - {(0, 0), (1, 1)}) | {(0, 1), (1, 0)}
    f = [[1 if i < 2 else 0 for i in range(s)] for _ in range(n)]
    return _config(g, s, matchings, f)


def merge(
    c1: Configuration, v1: int, c2: Configuration, v2: int, bijection: Sequence[int]
) -> Configuration:
    """Identify ``v1`` with ``v2`` and the i-th vertex of ``X_v1`` with the
    ``bijection[i]``-th vertex of ``X_v2``; f adds up on the merged fiber.

    Vertices of ``c1`` keep their indices; the other vertices of ``c2``
    follow in their original order.
    """
    s1, s2 = c1.cover.fiber_sizes[v1], c2.cover.fiber_sizes[v2]
    phi = list(bijection)
    if s1 != s2 or sorted(phi) != list(range(s1)):
        raise BadBijection(f"bijection {phi} does not map a fiber of size {s1} onto one of size {s2}")
    inv = {j: i for i, j in enumerate(phi)}
    n1 = c1.base.n
    new_index = {}
    for u in range(c2.base.n):
        if u != v2:
            new_index[u] = n1 + len(new_index)
    new_index[v2] = v1

    edges = list(c1.base.edges) + [(new_index[a], new_index[b]) for a, b in c2.base.edges]
    g = build_graph(edges, n1 + c2.base.n - 1)
    matchings: dict[tuple[int, int], set] = {e: set(p) for e, p in c1.cover.matchings.items()}
    for (a, b), pairs in c2.cover.matchings.items():
        for i, j in pairs:
            if a == v2:
                i = inv[i]
            if b == v2:
                j = inv[j]
            na, nb = new_index[a], new_index[b]
            if na < nb:
                matchings.setdefault((na, nb), set()).add((i, j))
            else:
                matchings.setdefault((nb, na), set()).add((j, i))
    sizes = list(c1.cover.fiber_sizes) + [
        c2.cover.fiber_sizes[u] for u in range(c2.base.n) if u != v2
    ]
    f = [list(fv) for fv in c1.f] + [list(c2.f[u]) for u in range(c2.base.n) if u != v2]
    for i in range(s1):
        f[v1][i] += c2.f[v2][phi[i]]
    cover = Cover(g, tuple(sizes), {e: frozenset(p) for e, p in matchings.items()})
    return Configuration(cover, tuple(tuple(fv) for fv in f))


def relabel(c: Configuration, order: Sequence[int]) -> Configuration:
    """Renumber base vertices: new vertex ``k`` is old vertex ``order[k]``."""
    pos = {old: new for new, old in enumerate(order)}
    g = build_graph([(pos[u], pos[v]) for u, v in c.base.edges], c.base.n)
    matchings = {}
    for (u, v), pairs in c.cover.matchings.items():
        a, b = pos[u], pos[v]
        matchings[(a, b) if a < b else (b, a)] = frozenset(
            pairs if a < b else {(j, i) for i, j in pairs}
        )
    cover = Cover(g, tuple(c.cover.fiber_sizes[o] for o in order), matchings)
    return Configuration(cover, tuple(c.f[o] for o in order))


def permute_fibers(c: Configuration, perms: Sequence[Sequence[int]]) -> Configuration:
    """Rename fiber vertices: old index ``i`` of ``X_v`` becomes ``perms[v][i]``."""
    matchings = {
        (u, v): frozenset((perms[u][i], perms[v][j]) for i, j in pairs)
        for (u, v), pairs in c.cover.matchings.items()
    }
    f = []
    for v, fv in enumerate(c.f):
        row = [0] * len(fv)
        for i, val in enumerate(fv):
            row[perms[v][i]] = val
        f.append(tuple(row))
    return Configuration(Cover(c.base, c.cover.fiber_sizes, matchings), tuple(f))


# -- recognition -------------------------------------------------------------


@dataclass(frozen=True)
class BlockCertificate:
    vertices: tuple[int, ...]  # block vertices, ascending, in the parent graph
    tag: Tag
    config: Configuration  # restricted cover carrying f^B
    # per block vertex: fiber indices in slot order (positive vertices first)
    orderings: tuple[tuple[int, ...], ...]
    parts: tuple[int, ...] = ()  # t_1..t_p for (K)


@dataclass(frozen=True)
class MergeStep:
    cut_vertex: int
    block: int  # index of the block attached at this step


@dataclass(frozen=True)
class ConstructibleCert:
    blocks: tuple[BlockCertificate, ...]
    merge_tree: tuple[MergeStep, ...] = field(default=())

    def f_block(self, b: int) -> tuple[tuple[int, ...], ...]:
        return self.blocks[b].config.f


def _positives(fv: Sequence[int]) -> list[int]:
    return [i for i, val in enumerate(fv) if val > 0]


def _match_m(c: Configuration) -> BlockCertificate | None:
    g = c.base
    emb = []
    for v in range(g.n):
        pos = _positives(c.f[v])
        d = g.degree(v)
        if d == 0:
            if pos:
                return None
            emb.append(0)
            continue
        if len(pos) != 1 or c.f[v][pos[0]] != d:
            return None
        emb.append(pos[0])
    for u, v in g.edges:
        if (emb[u], emb[v]) not in c.cover.matchings.get((u, v), ()):
            return None
    orderings = tuple(
        (emb[v],) + tuple(i for i in range(c.cover.fiber_sizes[v]) if i != emb[v])
        for v in range(g.n)
    )
    return BlockCertificate(tuple(range(g.n)), "M", c, orderings)


def _match_k(c: Configuration) -> BlockCertificate | None:
    g = c.base
    if not g.is_complete():
        return None
    n = g.n
    if n == 1:
        if any(c.f[0]):
            return None
        return BlockCertificate((0,), "K", c, (tuple(range(c.cover.fiber_sizes[0])),))
    root = _positives(c.f[0])
    slots: list[list[int]] = [[i] for i in root]
    for w in range(1, n):
        pairs = dict(c.cover.matching(0, w))
        for slot in slots:
            j = pairs.get(slot[0])
            if j is None or c.f[w][j] != c.f[0][slot[0]]:
                return None
            slot.append(j)
    # every positive vertex must sit in some slot class
    for w in range(1, n):
        if sorted(slot[w] for slot in slots) != _positives(c.f[w]):
            return None
    # slot classes must be cliques
    for slot in slots:
        for u, w in itertools.combinations(range(1, n), 2):
            if (slot[u], slot[w]) not in c.cover.matching(u, w):
                return None
    parts = tuple(c.f[0][slot[0]] for slot in slots)
    if sum(parts) != n - 1:
        return None
    orderings = []
    for v in range(n):
        head = [slot[v] for slot in slots]
        orderings.append(tuple(head + [i for i in range(c.cover.fiber_sizes[v]) if i not in head]))
    return BlockCertificate(tuple(range(n)), "K", c, tuple(orderings), parts)


def _match_c(c: Configuration) -> BlockCertificate | None:
    g = c.base
    if not g.is_cycle():
        return None
    n = g.n
    pos = []
    for v in range(n):
        p = _positives(c.f[v])
        if len(p) != 2 or any(c.f[v][i] != 1 for i in p):
            return None
        pos.append(p)
    mask = 0
    for v in range(n):
        for i in pos[v]:
            mask |= 1 << c.cover.hindex(v, i)
    adj = c.cover.h_adjacency
    for v in range(n):
        for i in pos[v]:
            if (adj[c.cover.hindex(v, i)] & mask).bit_count() != 2:
                return None
    # count components of the 2-regular positive part
    comps = 0
    rest = mask
    while rest:
        start = rest & -rest
        comps += 1
        frontier = start
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & mask & ~comp
        rest &= ~comp
    if comps != (2 if n % 2 else 1):
        return None
    orderings = tuple(
        tuple(pos[v]) + tuple(i for i in range(c.cover.fiber_sizes[v]) if i not in pos[v])
        for v in range(n)
    )
    return BlockCertificate(tuple(range(n)), "C", c, orderings)


def match_block(c: Configuration) -> BlockCertificate | None:
    """Test the (M), (K) and (C) patterns in that order on a single block."""
    for test in (_match_m, _match_k, _match_c):
        cert = test(c)
        if cert is not None:
            return cert
    return None


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first,) + rest


def _fiber_splits(
    fv: Sequence[int], degs: Sequence[int]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ways to write the fiber vector ``fv`` as a sum of one vector per block
    where block b's vector has total ``degs[b]``. Yields per-block vectors."""
    nb, s = len(degs), len(fv)

    def rec(i: int, remaining: list[int]) -> Iterator[list[tuple[int, ...]]]:
        if i == s:
            if all(r == 0 for r in remaining):
                yield []
            return
        for comp in _compositions(fv[i], remaining):
            nxt = [r - x for r, x in zip(remaining, comp)]
            for tail in rec(i + 1, nxt):
                yield [comp] + tail

    for columns in rec(0, list(degs)):
        yield tuple(tuple(columns[i][b] for i in range(s)) for b in range(nb))


def is_constructible(c: Configuration) -> ConstructibleCert | None:
    """Certificate that ``c`` is constructible, or None.

    Only connected base graphs can be constructible. Fibers are padded to a
    common size first.
    """
    c = normalize(c)
    g = c.base
    if g.n == 0 or not g.is_connected():
        return None
    if any(c.fiber_sum(v) != g.degree(v) for v in range(g.n)):
        return None
    decomp = g.blocks
    blocks = list(decomp.blocks)
    restricted = [c.restrict(sorted(b)) for b in blocks]  # (config, keep)
    local = [{v: i for i, v in enumerate(keep)} for _, keep in restricted]
    cuts = sorted(decomp.cut_vertices)
    cut_pos = {v: i for i, v in enumerate(cuts)}
    ready: list[list[int]] = [[] for _ in range(len(cuts) + 1)]
    for b, block in enumerate(blocks):
        inner = [cut_pos[v] + 1 for v in block if v in cut_pos]
        ready[max(inner, default=0)].append(b)

    chosen: dict[tuple[int, int], tuple[int, ...]] = {}  # (block, cut vertex) -> f^B row
    found: dict[int, BlockCertificate] = {}

    def block_config(b: int) -> Configuration:
        base, keep = restricted[b]
        rows = tuple(chosen.get((b, v), c.f[v]) for v in keep)
        return Configuration(base.cover, rows)

    def test_ready(level: int) -> bool:
        for b in ready[level]:
            cert = match_block(block_config(b))
            if cert is None:
                return False
            found[b] = cert
        return True

    def rec(i: int) -> bool:
        if i == len(cuts):
            return True
        v = cuts[i]
        owners = decomp.blocks_containing(v)
        degs = [restricted[b][0].base.degree(local[b][v]) for b in owners]
        for split in _fiber_splits(c.f[v], degs):
            for b, row in zip(owners, split):
                chosen[(b, v)] = row
            if test_ready(i + 1) and rec(i + 1):
                return True
        for b in owners:
            chosen.pop((b, v), None)
        return False

    if not test_ready(0) or not rec(0):
        return None

    certs = []
    for b, block in enumerate(blocks):
        cert = found[b]
        certs.append(BlockCertificate(tuple(sorted(block)), cert.tag, cert.config, cert.orderings, cert.parts))
    return ConstructibleCert(tuple(certs), _merge_order(blocks))


def _merge_order(blocks: Sequence[frozenset[int]]) -> tuple[MergeStep, ...]:
    """Breadth-first walk of the block-cut tree starting at block 0."""
    attached = {0}
    covered = set(blocks[0])
    steps: list[MergeStep] = []
    while len(attached) < len(blocks):
        for b, block in enumerate(blocks):
            if b in attached:
                continue
            shared = sorted(covered & block)
            if shared:
                steps.append(MergeStep(shared[0], b))
                attached.add(b)
                covered |= block
                break
    return tuple(steps)


def rebuild(cert: ConstructibleCert) -> Configuration:
    """Replay the merge tree from the block configurations alone.

    The result uses the original vertex numbering, so it equals the
    (normalized) configuration that was recognized.
    """
    first = cert.blocks[0]
    current = first.config
    labels = list(first.vertices)  # current index -> original vertex
    for step in cert.merge_tree:
        blk = cert.blocks[step.block]
        v1 = labels.index(step.cut_vertex)
        v2 = blk.vertices.index(step.cut_vertex)
        s = blk.config.cover.fiber_sizes[v2]
        current = merge(current, v1, blk.config, v2, list(range(s)))
        labels += [u for u in blk.vertices if u != step.cut_vertex]
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    return relabel(current, order)


def verify_certificate(cert: ConstructibleCert) -> bool:
    """Every block config matches its declared pattern."""
    tests = {"M": _match_m, "K": _match_k, "C": _match_c}
    return all(tests[blk.tag](blk.config) is not None for blk in cert.blocks)


# -- random generation ---------------------------------------------------------

_BLOCK_GRAPHS = (
    complete_graph(2),
    complete_graph(3),
    complete_graph(4),
    cycle_graph(4),
    cycle_graph(5),
    build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], 4),  # K4 minus an edge
)


def random_block(rng: random.Random, s: int) -> Configuration:
    kind = rng.choice("MKC" if s >= 2 else "MK")
    if kind == "M":
        g = rng.choice(_BLOCK_GRAPHS)
        return build_m(g, s, [rng.randrange(s) for _ in range(g.n)])
    if kind == "K":
        n = rng.randint(2, 4)
        while True:
            cuts = sorted(rng.sample(range(1, n - 1), rng.randint(0, n - 2)))
            t = [b - a for a, b in zip([0] + cuts, cuts + [n - 1])]
            if len(t) <= s:
                return build_k(n, t, s)
    n = rng.randint(3, 6)
    return build_c(n, s, "odd" if n % 2 else "even")


def random_constructible(
    rng: random.Random, s: int = 2, max_blocks: int = 3, scramble: bool = True
) -> Configuration:
    """Merge a random tree of random block patterns.

    With ``scramble`` the fiber vertices are renamed at random, so patterns
    do not always sit at the builders' slot positions.
    """
    c = random_block(rng, s)
    for _ in range(rng.randint(0, max_blocks - 1)):
        other = random_block(rng, s)
        phi = list(range(s))
        rng.shuffle(phi)
        c = merge(c, rng.randrange(c.base.n), other, rng.randrange(other.base.n), phi)
    if scramble:
        perms = []
        for _ in range(c.base.n):
            p = list(range(s))
            rng.shuffle(p)
            perms.append(p)
        c = permute_fibers(c, perms)
    return c
