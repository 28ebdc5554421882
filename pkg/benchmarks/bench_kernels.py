"""Compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``. Each workload is run on
both backends, results are compared, and the best-of-N wall time printed.
"""

from __future__ import annotations

import argparse
import itertools
import random
import time

from dpcolor import _purepy
from dpcolor.chromatic import _conjugacy_representatives, _membership_table, _spanning_tree_first
from dpcolor.corpus import named_graphs
from dpcolor.cover import identity_cover, search_order
from dpcolor.properties import EDGELESS

try:
    from dpcolor import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def peel_workload(rng: random.Random, trials: int = 20000):
    cases = []
    for _ in range(trials):
        h = rng.randint(4, 24)
        adj = [0] * h
        for a, b in itertools.combinations(range(h), 2):
            if rng.random() < 0.3:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        f = [rng.randint(0, 3) for _ in range(h)]
        cases.append((adj, f, rng.getrandbits(h)))

    def run(mod):
        return [mod.strictly_degenerate(a, f, m) for a, f, m in cases]

    return run


def transversal_workload(rng: random.Random, trials: int = 3000):
    g = named_graphs()["bowtie"]
    c = identity_cover(g, 2)
    order = search_order(g)
    fibers = [list(c.fiber(v)) for v in order]
    adj = c.h_adjacency
    fs = [[rng.randint(0, 2) for _ in range(c.num_h)] for _ in range(trials)]

    def run(mod):
        return [mod.find_transversal(fibers, adj, f) for f in fs]

    return run


def cover_search_workload(name: str, k: int):
    g = named_graphs()[name]
    edges, ntree = _spanning_tree_first(g)
    perms = list(itertools.permutations(range(k)))
    table = _membership_table(g, edges, EDGELESS)
    first = _conjugacy_representatives(perms) if ntree < len(edges) else None

    def run(mod):
        status, assign, _ = mod.dp_cover_search(g.n, k, edges, [0] * ntree, table, perms, first, 0)
        return status, assign

    return run


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    workloads = {
        "peel (20k random sets)": peel_workload(rng),
        "transversal (3k bowtie configs)": transversal_workload(rng),
        "cover search octahedron, k=4": cover_search_workload("octahedron", 4),
        "cover search K4, k=4": cover_search_workload("K4", 4),
        "cover search W4, k=4": cover_search_workload("W4", 4),
    }
    print(f"{'workload':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, run in workloads.items():
        py = best_of(lambda: run(_purepy), args.repeat)
        if _ckernels is None:
            print(f"{label:34} {py:10.4f} {'n/a':>10} {'n/a':>8}")
            continue
        assert run(_purepy) == run(_ckernels), f"backends disagree on {label}"
        cy = best_of(lambda: run(_ckernels), args.repeat)
        print(f"{label:34} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
