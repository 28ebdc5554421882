"""JSON and text I/O for graphs, covers and configurations.

Cover JSON::

    {"graph": [[u, v], ...], "fibers": [s0, s1, ...],
     "matchings": {"u-v": [[i, j], ...], ...}}

``graph`` may also be a graph6 string. A list-assignment input replaces
``fibers``/``matchings`` with ``"lists": [[colours of v0], ...]``.
Configuration JSON adds ``"f": {"v:i": value, ...}`` with every H-vertex
present.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .config import Configuration
from .cover import Cover, Transversal, cover_from_lists
from .errors import InvalidCover, ParseError
from .graph import Graph, build_graph, from_graph6, parse_graph, to_graph6

SCHEMA = "dpcolor/1"


def _load_json(text: str, where: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{where} line {exc.lineno} column {exc.colno}") from None


def _graph_field(obj: dict, n: int | None) -> Graph:
    raw = obj.get("graph")
    if isinstance(raw, str):
        return from_graph6(raw)
    if not isinstance(raw, list):
        raise ParseError("'graph' must be an edge list or a graph6 string", "graph")
    edges = []
    for idx, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError("edge must be a pair of integers", f"graph[{idx}]")
        edges.append((e[0], e[1]))
    if n is None:
        n = obj.get("n", 1 + max((max(e) for e in edges), default=-1))
    return build_graph(edges, n)


def cover_from_json(obj: dict) -> Cover:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", "root")
    if "lists" in obj:
        lists = obj["lists"]
        if not isinstance(lists, list):
            raise ParseError("'lists' must be a list of lists", "lists")
        return cover_from_lists(_graph_field(obj, len(lists)), lists)
    fibers = obj.get("fibers")
    if not (isinstance(fibers, list) and all(isinstance(s, int) for s in fibers)):
        raise ParseError("'fibers' must be a list of integers", "fibers")
    g = _graph_field(obj, len(fibers))
    matchings: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    for key, pairs in (obj.get("matchings") or {}).items():
        try:
            u, v = (int(x) for x in key.split("-"))
        except ValueError:
            raise ParseError("matching key must look like 'u-v'", f"matchings.{key}") from None
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p) for p in pairs
        ):
            raise ParseError("matching must be a list of [i, j] pairs", f"matchings.{key}")
        if u > v:
            u, v = v, u
            pairs = [[j, i] for i, j in pairs]
        e = (u, v)
        if e in matchings:
            raise InvalidCover(f"edge {u}-{v} given twice", e)
        firsts = [i for i, _ in pairs]
        seconds = [j for _, j in pairs]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise InvalidCover(f"edge {u}-{v}: matching repeats a coordinate", e)
        matchings[e] = frozenset((i, j) for i, j in pairs)
    c = Cover(g, tuple(fibers), matchings)
    bad = c.violation()
    if bad is not None:
        edge, reason = bad
        raise InvalidCover(f"edge {edge[0]}-{edge[1]}: {reason}", edge)
    return c


def cover_to_json(c: Cover) -> dict:
    return {
        "graph": [list(e) for e in c.base.edges],
        "fibers": list(c.fiber_sizes),
        "matchings": {
            f"{u}-{v}": sorted([i, j] for i, j in pairs)
            for (u, v), pairs in sorted(c.matchings.items())
            if pairs
        },
    }


def config_from_json(obj: dict) -> Configuration:
    c = cover_from_json(obj)
    raw = obj.get("f")
    if not isinstance(raw, dict):
        raise ParseError("'f' must map 'v:i' to a value", "f")
    rows = []
    for v, s in enumerate(c.fiber_sizes):
        row = []
        for i in range(s):
            key = f"{v}:{i}"
            if key not in raw:
                raise ParseError(f"missing f entry {key!r}", f"f.{key}")
            val = raw[key]
            if not isinstance(val, int) or val < 0:
                raise ParseError(f"f entry {key!r} must be a non-negative integer", f"f.{key}")
            row.append(val)
        rows.append(tuple(row))
    extra = set(raw) - {f"{v}:{i}" for v, s in enumerate(c.fiber_sizes) for i in range(s)}
    if extra:
        key = sorted(extra)[0]
        raise ParseError(f"f entry {key!r} names no H-vertex", f"f.{key}")
    return Configuration(c, tuple(rows))


def config_to_json(c: Configuration) -> dict:
    out = cover_to_json(c.cover)
    out["f"] = {f"{v}:{i}": val for v, fv in enumerate(c.f) for i, val in enumerate(fv)}
    return out


def parse_input(path: str | Path, kind: str) -> Graph | Cover | Configuration:
    """Read a graph (graph6 or edge list), a cover or a configuration (JSON)."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(exc), str(p)) from None
    if kind == "graph":
        stripped = text.lstrip()
        if stripped.startswith("{"):
            obj = _load_json(text, str(p))
            return _graph_field(obj, len(obj["fibers"]) if "fibers" in obj else None)
        return parse_graph(text)
    obj = _load_json(text, str(p))
    if kind == "cover":
        return cover_from_json(obj)
    if kind == "config":
        return config_from_json(obj)
    raise ValueError(f"unknown input kind {kind!r}")


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data for the result objects of the library."""
    if isinstance(obj, Configuration):
        return config_to_json(obj)
    if isinstance(obj, Cover):
        return cover_to_json(obj)
    if isinstance(obj, Graph):
        return {"graph6": to_graph6(obj), "n": obj.n, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, Transversal):
        return list(obj.choice)
    if isinstance(obj, Fraction):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return obj


def dumps(payload: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, schema tag."""
    return json.dumps(to_jsonable({"schema": SCHEMA, **payload}), sort_keys=True, indent=2)
