"""Command-line front end.

Exit status: 0 for holds / colourable / value computed, 1 for violated /
uncolourable, 2 for errors. Output is canonical JSON (``--format table``
gives a flat human view).
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from . import chromatic, theorems
from .config import is_degree_feasible, normalize, solve
from .constructible import build_c, build_k, build_m, is_constructible
from .corpus import SWEEP_GRAPHS, brooks_sweep, config_sweep, dirac_cover_scan, named_graphs
from .cover import Cover, find_P_transversal, is_P_critical_cover
from .errors import DPColorError, PreconditionFailed, TooLarge
from .formats import SCHEMA, dumps, parse_input, to_jsonable
from .graph import Graph, to_graph6
from .properties import parse_property

THEOREMS = ("low-vertex-blocks", "brooks", "ert", "gallai", "dirac", "mihok")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--property", default="O", help="O or Dk (default O)")
    common.add_argument("--k", type=int, help="colour count / bound parameter")
    common.add_argument("--max-order", type=int, default=chromatic.DP_ORDER_LIMIT)
    common.add_argument("--max-fiber", type=int, default=4)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--no-witness", action="store_true")
    common.add_argument("--input", help="input file (alternative to the positional argument)")

    ap = argparse.ArgumentParser(prog="dpcolor", description="Generalized DP-colouring toolkit.")
    sub = ap.add_subparsers(dest="verb", required=True)
    for verb in ("solve-config", "check-cover", "chi", "chi-list", "chi-dp", "recognize"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("file", nargs="?")
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("theorem", choices=THEOREMS)
    sp.add_argument("file", nargs="?")
    sp = sub.add_parser("gen", parents=[common])
    sp.add_argument("kind", choices=("dirac", "m", "k", "c"))
    sp.add_argument("file", nargs="?", help="graph for kind m")
    sp.add_argument("--split", help="|B1|,|B2| for dirac")
    sp.add_argument("--n", type=int, help="order for kinds k and c")
    sp.add_argument("--t", help="comma-separated slot values for kind k")
    sp.add_argument("--s", type=int, default=1, help="fiber size")
    sp = sub.add_parser("corpus-sweep", parents=[common])
    sp.add_argument("sweep", nargs="?", choices=("configs", "brooks"), default="configs")
    sp = sub.add_parser("dirac-cover-scan", parents=[common])
    sp.add_argument("--split", help="|B1|,|B2|")
    return ap


def _input(args: argparse.Namespace) -> str:
    path = args.input or getattr(args, "file", None)
    if not path:
        raise PreconditionFailed("an input file is required")
    return path


def _guard_cover(c: Cover, args: argparse.Namespace) -> None:
    if c.n > args.max_order:
        raise TooLarge(f"order {c.n} exceeds --max-order {args.max_order}")
    if c.fiber_sizes and max(c.fiber_sizes) > args.max_fiber:
        raise TooLarge(f"fiber size {max(c.fiber_sizes)} exceeds --max-fiber {args.max_fiber}")


def _need_k(args: argparse.Namespace) -> int:
    if args.k is None:
        raise PreconditionFailed("--k is required")
    return args.k


def cmd_solve_config(args) -> tuple[int, dict]:
    c = parse_input(_input(args), "config")
    _guard_cover(c.cover, args)
    t = solve(c)
    out: dict[str, Any] = {"colorable": t is not None, "degree_feasible": is_degree_feasible(c)}
    if t is not None:
        out["solution"] = t
    elif c.base.is_connected():
        cert = is_constructible(normalize(c))
        out["constructible"] = cert is not None
        out["certificate"] = cert
    return (0 if t is not None else 1), out


def cmd_check_cover(args) -> tuple[int, dict]:
    c = parse_input(_input(args), "cover")
    _guard_cover(c, args)
    p = parse_property(args.property)
    t = find_P_transversal(c, p)
    out: dict[str, Any] = {"valid": True, "colorable": t is not None}
    if t is not None:
        out["transversal"] = t
    else:
        out["critical"] = is_P_critical_cover(c, p)
    return (0 if t is not None else 1), out


def _graph(args) -> Graph:
    g = parse_input(_input(args), "graph")
    if g.n > args.max_order:
        raise TooLarge(f"order {g.n} exceeds --max-order {args.max_order}")
    return g


def cmd_chi(args) -> tuple[int, dict]:
    g = _graph(args)
    res = chromatic.chi(g, parse_property(args.property), limit=args.max_order)
    return 0, {"value": res.value, "witness": res.witness}


def cmd_chi_list(args) -> tuple[int, dict]:
    g = _graph(args)
    res = chromatic.chi_list(g, parse_property(args.property), limit=args.max_order)
    out: dict[str, Any] = {"value": res.value, **res.notes}
    if res.witness is not None:
        out["witness"] = {"graph": [list(e) for e in g.edges], "lists": res.witness}
    return 0, out


def cmd_chi_dp(args) -> tuple[int, dict]:
    g = _graph(args)
    res = chromatic.chi_dp(g, parse_property(args.property), limit=args.max_order)
    out: dict[str, Any] = {"value": res.value}
    if "bad_cover_at_k" in res.notes:
        out["bad_cover_at_k"] = res.notes["bad_cover_at_k"]
    out["witness"] = res.witness
    return 0, out


def cmd_recognize(args) -> tuple[int, dict]:
    c = parse_input(_input(args), "config")
    _guard_cover(c.cover, args)
    cert = is_constructible(normalize(c))
    return (0 if cert is not None else 1), {"constructible": cert is not None, "certificate": cert}


def _graph_or_cover(path: str) -> tuple[Graph, Cover | None]:
    try:
        c = parse_input(path, "cover")
        return c.base, c
    except DPColorError:
        return parse_input(path, "graph"), None


def cmd_verify(args) -> tuple[int, dict]:
    p = parse_property(args.property)
    path = _input(args)
    name = args.theorem
    if name == "low-vertex-blocks":
        rep = theorems.verify_low_vertex_blocks(parse_input(path, "cover"), p)
    elif name == "ert":
        c = parse_input(path, "cover")
        rep = theorems.verify_ert(c.base, c, p)
    elif name == "brooks":
        rep = theorems.verify_brooks(_graph(args), p)
    else:
        g, c = _graph_or_cover(path)
        mode = {"gallai": "Gallai", "dirac": "Dirac", "mihok": "Mihok"}[name]
        rep = theorems.check_edge_bounds(g, p, _need_k(args), mode, cover=c)
    return (0 if rep.holds else 1), {"report": rep}


def cmd_gen(args) -> tuple[int, dict]:
    if args.kind == "dirac":
        split = tuple(int(x) for x in (args.split or "1,2").split(","))
        d = theorems.gen_dirac(args.k or 3, split)
        return 0, {"graph6": to_graph6(d.graph), "parts": d}
    if args.kind == "m":
        return 0, {"config": build_m(_graph(args), args.s)}
    if args.kind == "k":
        t = [int(x) for x in args.t.split(",")] if args.t else []
        return 0, {"config": build_k(args.n or len(t) + 1, t, args.s)}
    n = args.n or 3
    return 0, {"config": build_c(n, max(args.s, 2), "odd" if n % 2 else "even")}


def cmd_corpus_sweep(args) -> tuple[int, dict]:
    if args.sweep == "configs":
        graphs = named_graphs()
        rep = config_sweep(
            [graphs[name] for name in SWEEP_GRAPHS if graphs[name].n <= args.max_order],
            s_max=min(2, args.max_fiber),
            workers=args.workers,
        )
        out = {
            "sweep": "configs",
            "configurations": rep.configurations,
            "uncolorable": rep.uncolorable,
            "constructible": rep.constructible,
            "discrepancies": rep.discrepancies,
            "inexact_uncolorable": rep.inexact_uncolorable,
        }
        ok = not rep.discrepancies and not rep.inexact_uncolorable
        return (0 if ok else 1), out
    results = brooks_sweep(min(args.max_order, 6), args.property)
    failures = [g for g, r in results if not r.holds]
    exceptions: dict[str, int] = {}
    for _, r in results:
        if r.exception_class:
            exceptions[r.exception_class] = exceptions.get(r.exception_class, 0) + 1
    out = {"sweep": "brooks", "graphs": len(results), "exceptions": exceptions, "failures": failures}
    return (0 if not failures else 1), out


def cmd_dirac_cover_scan(args) -> tuple[int, dict]:
    split = tuple(int(x) for x in (args.split or "1,2").split(","))
    return 0, {"scan": dirac_cover_scan(args.k or 3, split)}


COMMANDS = {
    "solve-config": cmd_solve_config,
    "check-cover": cmd_check_cover,
    "chi": cmd_chi,
    "chi-list": cmd_chi_list,
    "chi-dp": cmd_chi_dp,
    "recognize": cmd_recognize,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "corpus-sweep": cmd_corpus_sweep,
    "dirac-cover-scan": cmd_dirac_cover_scan,
}

_WITNESS_KEYS = ("witness", "solution", "transversal", "certificate", "example")


def _strip_witness(data: Any) -> Any:
    if isinstance(data, dict):
        return {k: _strip_witness(v) for k, v in data.items() if k not in _WITNESS_KEYS}
    if isinstance(data, list):
        return [_strip_witness(x) for x in data]
    return data


def _table(payload: dict, prefix: str = "") -> list[str]:
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            lines += _table(val, f"{prefix}{key}.")
        else:
            lines.append(f"{prefix}{key}\t{val}")
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args, extra = parser.parse_known_args(argv)
    # a file given after options lands in ``extra`` when the verb has two positionals
    if len(extra) == 1 and not extra[0].startswith("-") and getattr(args, "file", "") is None:
        args.file = extra[0]
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        status, payload = COMMANDS[args.verb](args)
        payload = {"command": args.verb, **payload}
    except (DPColorError, ValueError) as exc:
        code = exc.code if isinstance(exc, DPColorError) else "invalid_argument"
        status, payload = 2, {"command": args.verb, "error": {"code": code, "message": str(exc)}}
    data = to_jsonable(payload)
    if args.no_witness:
        data = _strip_witness(data)
    if args.format == "table":
        print("\n".join(_table({"schema": SCHEMA, **data})))
    else:
        print(dumps(data))
    return status


if __name__ == "__main__":
    sys.exit(main())
