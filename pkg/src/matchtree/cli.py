"""Command-line front end: build complexes, run matching trees, reduce, compute homology, verify."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any

from .devoid import devoid_complex, dominance_complex, independence_complex, parse_family
from .errors import MatchTreeError
from .graph import Multigraph, complete, cycle, parse_graph, path, random_chordal, random_tree, star
from .homology import betti
from .morse import DEFAULT_FACE_BUDGET, DEFAULT_NODE_BUDGET, assemble_matching, run_tree, verify_acyclic
from .reductions import complementation, find_split, fold_reduce, nonface_split, split_reduce
from .simplicial import SimplicialComplex, face, load_complex, members
from .strategies import parse_strategy
from .verify import SUITES, Budgets, verify_suite

FAMILIES = ("path", "cycle", "star", "complete", "tree", "chordal")


def family_graph(name: str, n: int, seed: int) -> Multigraph:
    if name == "path":
        return path(n)
    if name == "cycle":
        return cycle(n)
    if name == "star":
        return star(n)
    if name == "complete":
        return complete(n)
    if name == "tree":
        return random_tree(n, seed)
    return random_chordal(n, 0.5, seed)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--budget-faces", type=int, default=DEFAULT_FACE_BUDGET)
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write output here instead of stdout")


def _source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("complex source")
    g.add_argument("--graph", help="graph file ('n N' then 'u v m' lines)")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--n", type=int, help="size parameter for --family")
    g.add_argument("--complex", default="devoid",
                   help="devoid | ind | dom, or a JSON complex file")
    g.add_argument("--pattern", default="k2", help="comma-separated patterns for devoid, e.g. p3,c2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchtree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="print a complex as minimal non-faces")
    _common(p)
    _source(p)

    p = sub.add_parser("morse", help="run a matching tree and report critical cells")
    _common(p)
    _source(p)
    p.add_argument("--strategy", default="greedy",
                   help="greedy | scripted:<file> | path:<k> | cycle:<k> | simplicial | leaf")
    p.add_argument("--check", action="store_true", help="assemble the matching and check acyclicity")
    p.add_argument("--tree", action="store_true", help="include the tree in table output")

    p = sub.add_parser("reduce", help="apply a homotopy reduction")
    _common(p)
    _source(p)
    p.add_argument("--op", choices=("fold", "split", "complement", "nonface"), default="fold")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--set", help="comma-separated vertex ids (complement: A; nonface: K)")
    p.add_argument("--extra", action="append", default=[], help="nonface: comma-separated extra face (repeatable)")
    p.add_argument("--apex", type=int, help="nonface: cone apex certificate")

    p = sub.add_parser("homology", help="reduced integral homology")
    _common(p)
    _source(p)

    p = sub.add_parser("verify", help="check closed-form predictions")
    _common(p)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--k", type=int, action="append", help="pattern size (repeatable; paths and cycles)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--timings", action="store_true", help="add wall-clock seconds to records")
    return parser


def load_source(args: argparse.Namespace) -> tuple[SimplicialComplex, Multigraph | None]:
    kind = args.complex
    if kind not in ("devoid", "ind", "dom"):
        if args.graph or args.family:
            raise MatchTreeError("give either a complex file or a graph source, not both")
        return load_complex(kind)[0], None
    if bool(args.graph) == bool(args.family):
        raise MatchTreeError("give exactly one of --graph or --family")
    if args.graph:
        with open(args.graph) as fh:
            G = parse_graph(fh.read())
    else:
        if args.n is None:
            raise MatchTreeError("--family needs --n")
        G = family_graph(args.family, args.n, args.seed)
    if kind == "ind":
        return independence_complex(G), G
    if kind == "dom":
        return dominance_complex(G), G
    return devoid_complex(G, parse_family(args.pattern)), G


def _vertices(text: str | None) -> int:
    if not text:
        raise MatchTreeError("this operation needs --set")
    return face(int(x) for x in text.split(",") if x.strip())


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join([fmt.format(*header), fmt.format(*("-" * w for w in widths))]
                     + [fmt.format(*map(str, r)) for r in rows])


def _faces(fs: Sequence[int]) -> list[list[int]]:
    return [list(members(s)) for s in fs]


def cmd_build(args: argparse.Namespace) -> tuple[Any, str, bool]:
    C, _ = load_source(args)
    doc = C.to_json()
    doc["ghosts"] = list(members(C.ghosts))
    text = f"n = {C.n}\nminimal non-faces: {doc['min_nonfaces']}"
    return doc, text, True


def cmd_morse(args: argparse.Namespace) -> tuple[Any, str, bool]:
    C, G = load_source(args)
    strategy = parse_strategy(args.strategy, G)
    tree, report = run_tree(C, strategy, args.budget_nodes, args.budget_faces)
    doc = report.to_json()
    ok = True
    if args.check:
        M = assemble_matching(tree, args.budget_faces)
        ok = verify_acyclic(C, M, args.budget_faces)
        doc["acyclic"] = ok
    lines = [f"strategy: {report.strategy}", f"tree nodes: {report.tree_nodes}",
             f"critical cells: {_faces(report.critical)}", f"descriptor: {report.descriptor}"]
    if args.tree:
        lines.append(tree.render())
    return doc, "\n".join(lines), ok


def cmd_reduce(args: argparse.Namespace) -> tuple[Any, str, bool]:
    C, _ = load_source(args)
    if args.op == "fold":
        out, trace = fold_reduce(C)
        doc = {"folds": [{"witness": u, "deleted": v} for u, v in trace.steps], "result": out.to_json()}
        text = "\n".join([f"delete {v} (witness {u})" for u, v in trace.steps]
                         + [f"remaining vertices: {list(out.vertices)}"])
        return doc, text, True
    if args.op == "split":
        if args.u is None or args.v is None:
            found = find_split(C)
            if found is None:
                raise MatchTreeError("no vertex pair satisfies the split hypothesis")
            args.u, args.v = found
        dec = split_reduce(C, args.u, args.v)
    elif args.op == "complement":
        dec = complementation(C, _vertices(args.set))
    else:
        extra = [_vertices(e) for e in args.extra]
        _, dec = nonface_split(C, _vertices(args.set), extra, apex=args.apex)
    prof = dec.profile()
    doc = {"note": dec.note, "parts": [{"complex": part.to_json(), "suspensions": s} for part, s in dec.parts],
           "homology": prof.to_json()}
    text = "\n".join([dec.note] + [f"Σ^{s} of {part.to_json()['min_nonfaces']}" for part, s in dec.parts]
                     + [f"betti: {prof.betti}"])
    return doc, text, True


def cmd_homology(args: argparse.Namespace) -> tuple[Any, str, bool]:
    C, _ = load_source(args)
    prof = betti(C, limit=args.budget_faces)
    reduced = prof.reduced_euler
    has_empty = not C.is_void
    doc = {"betti": {str(d): b for d, b in sorted(prof.betti.items())},
           "torsion": {str(d): list(t) for d, t in sorted(prof.torsion.items())},
           "chi": reduced + (1 if has_empty else 0), "reduced_chi": reduced}
    text = f"reduced betti: {prof.betti}\ntorsion: {prof.torsion}\nchi: {doc['chi']}"
    return doc, text, True


def cmd_verify(args: argparse.Namespace) -> tuple[Any, str, bool]:
    params: dict[str, Any] = {}
    if args.suite != "figures":
        params["budgets"] = Budgets(args.budget_nodes, args.budget_faces)
    if args.suite in ("paths", "cycles"):
        if args.k:
            params["ks"] = tuple(args.k)
    elif args.suite != "figures":
        params["seed"] = args.seed
        if args.count is not None:
            params["count"] = args.count
    if args.n_max is not None and args.suite != "figures":
        params["n_max"] = args.n_max
    records = verify_suite(args.suite, **params)
    ok = all(r.status != "fail" for r in records)
    lines = "\n".join(json.dumps(r.to_json(args.timings), sort_keys=True) for r in records)
    table = _table([r.row() for r in records], ["suite", "instance", "status", "predicted", "computed"])
    return lines, table, ok


COMMANDS = {"build": cmd_build, "morse": cmd_morse, "reduce": cmd_reduce, "homology": cmd_homology,
            "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text, ok = COMMANDS[args.command](args)
    except (MatchTreeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "table":
        out = text
    elif isinstance(doc, str):
        out = doc
    else:
        out = json.dumps(doc, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
