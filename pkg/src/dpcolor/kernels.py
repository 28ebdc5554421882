"""Backend selection for the hot search loops.

The compiled extension is used when it imports and the instance fits its
64-bit vertex words; ``DPCOLOR_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _purepy

try:
    if os.environ.get("DPCOLOR_PURE_PYTHON") == "1":
        raise ImportError("pure Python requested")
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
WORD = 64
MAX_TABLE_EDGES = 24


def strictly_degenerate(adj: Sequence[int], f: Sequence[int], mask: int) -> bool:
    if _ckernels is not None and len(adj) <= WORD:
        return _ckernels.strictly_degenerate(adj, f, mask)
    return _purepy.strictly_degenerate(adj, f, mask)


def find_transversal(
    fibers: Sequence[Sequence[int]], adj: Sequence[int], f: Sequence[int]
) -> list[int] | None:
    if _ckernels is not None and len(adj) <= WORD:
        return _ckernels.find_transversal(fibers, adj, f)
    return _purepy.find_transversal(fibers, adj, f)


def dp_cover_search(n, k, edges, fixed, table, perms, first_choices, budget):
    if _ckernels is not None and len(edges) <= MAX_TABLE_EDGES:
        return _ckernels.dp_cover_search(n, k, edges, fixed, table, perms, first_choices, budget)
    return _purepy.dp_cover_search(n, k, edges, fixed, table, perms, first_choices, budget)
