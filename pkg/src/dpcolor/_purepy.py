"""Pure-Python search kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or when an instance exceeds its 64-vertex word
size. H-vertex sets are Python ints used as bitsets.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"


def strictly_degenerate(adj: Sequence[int], f: Sequence[int], mask: int) -> bool:
    """Peel every vertex whose degree inside ``mask`` is below its f-value.

    True iff the peeling empties the set.
    """
    rem = mask
    while rem:
        progressed = False
        m = rem
        while m:
            low = m & -m
            x = low.bit_length() - 1
            m ^= low
            if (adj[x] & rem).bit_count() < f[x]:
                rem ^= low
                progressed = True
        if not progressed:
            return False
    return True


def find_transversal(
    fibers: Sequence[Sequence[int]], adj: Sequence[int], f: Sequence[int]
) -> list[int] | None:
    """First choice (one H-vertex per fiber, fibers in the given order) whose
    induced subgraph is strictly f-degenerate.

    Branches die as soon as the partial choice fails peeling: adding vertices
    never removes edges among the chosen ones, so the failure is permanent.
    """
    depth = len(fibers)
    if depth == 0:
        return []
    choice = [0] * depth
    masks = [0] * (depth + 1)
    idx = [0] * depth
    d = 0
    while d >= 0:
        fib = fibers[d]
        if idx[d] < len(fib):
            x = fib[idx[d]]
            idx[d] += 1
            if f[x] <= 0:
                continue
            m = masks[d] | (1 << x)
            if strictly_degenerate(adj, f, m):
                choice[d] = x
                masks[d + 1] = m
                d += 1
                if d == depth:
                    return choice
                idx[d] = 0
        else:
            d -= 1
    return None


def dp_cover_search(
    n: int,
    k: int,
    edges: Sequence[tuple[int, int]],
    fixed: Sequence[int],
    table: bytes,
    perms: Sequence[Sequence[int]],
    first_choices: Sequence[int] | None,
    budget: int,
) -> tuple[int, list[int] | None, int]:
    """Branch-and-bound over full-matching k-covers of a graph.

    ``edges[:len(fixed)]`` carry the fixed permutations ``perms[fixed[i]]``;
    the rest are branched on. Transversals are the integers ``0..k**n-1``
    read in base k. ``table[mask]`` says whether the spanning subgraph with
    edge set ``mask`` (bit i = edges[i]) has the property; it must be
    subgraph-closed. ``perms[0]`` must be the identity.

    Returns ``(status, assignment, nodes)`` with status 0 = every cover has a
    good transversal, 1 = ``assignment`` (perm index per edge) is a cover
    without one, 2 = node budget exhausted.
    """
    N = k ** n
    m = len(edges)
    pw = [k ** v for v in range(n)]
    digit = [[(T // pw[v]) % k for T in range(N)] for v in range(n)]
    nperm = len(perms)
    assign = [0] * m
    nodes = 0

    def apply(ts, ms, e, p):
        u, v = edges[e]
        du, dv, perm = digit[u], digit[v], perms[p]
        bit = 1 << e
        nt, nm = [], []
        for T, M in zip(ts, ms):
            if perm[du[T]] == dv[T]:
                M |= bit
                if not table[M]:
                    continue
            nt.append(T)
            nm.append(M)
        return nt, nm

    def counts(ts, e):
        u, v = edges[e]
        du, dv = digit[u], digit[v]
        c = [[0] * k for _ in range(k)]
        for T in ts:
            c[du[T]][dv[T]] += 1
        return c

    ts = list(range(N))
    ms = [0] * N
    for e, p in enumerate(fixed):
        assign[e] = p
        ts, ms = apply(ts, ms, e, p)
    start = len(fixed)

    def dfs(d, ts, ms):
        nonlocal nodes
        nodes += 1
        if budget and nodes > budget:
            return 2
        if not ts:
            for e in range(d, m):
                assign[e] = 0
            return 1
        if d == m:
            return 0
        bound = 0
        cur = None
        for e in range(d, m):
            c = counts(ts, e)
            if e == d:
                cur = c
            rows = sum(max(r) for r in c)
            cols = sum(max(c[i][j] for i in range(k)) for j in range(k))
            bound += min(rows, cols)
        if bound < len(ts):
            return 0
        choices = range(nperm) if (d != start or first_choices is None) else first_choices
        scored = sorted(choices, key=lambda p: -sum(cur[i][perms[p][i]] for i in range(k)))
        for p in scored:
            assign[d] = p
            nt, nm = apply(ts, ms, d, p)
            r = dfs(d + 1, nt, nm)
            if r:
                return r
        return 0

    status = dfs(start, ts, ms)
    return status, (list(assign) if status == 1 else None), nodes
