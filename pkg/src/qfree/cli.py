"""Command-line front end.

Exit codes: 0 success, 1 some verdict Unknown, 2 a hypothesis violated,
3 invalid input, 4 a sign could not be decided at the requested tolerance.
"""
from __future__ import annotations

import argparse
import json
import sys

from .abelian import DEFAULT_TOL, AmbiguousSign
from .document import InputError, load_json, parse_input, validate_document, document_to_rep
from .fusion import FiniteTable, UnknownIrrep
from .graph import (
    FusionGraph,
    build_fusion_graph,
    export_dot,
    export_json,
    graph_from_json,
    hereditary_saturated_sets,
    k_theory,
    render_set,
    validate_graph,
)
from .repn import DEFAULT_DEPTH, render_decomposition, tensor_power_decompose
from .verdicts import analyze, exit_status

EXIT_OK, EXIT_UNKNOWN, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_rep(path: str):
    return parse_input(_read(path))


def _load_graph(path: str) -> tuple[FusionGraph, object]:
    """A graph from either an input document or a graph JSON file."""
    text = _read(path)
    data = load_json(text)
    if isinstance(data, dict) and "vertices" in data:
        return graph_from_json(data), None
    validate_document(data, text)
    rep = document_to_rep(data)
    if not isinstance(rep.ring, FiniteTable):
        raise InputError("the fusion graph of SU(2) is infinite; use a finite table")
    g = build_fusion_graph(rep)
    validate_graph(g)
    return g, rep


def cmd_analyze(args) -> int:
    rep = _load_rep(args.input)
    report = analyze(rep, args.tol, args.depth)
    sys.stdout.write(report.dumps() if args.json else report.render())
    return exit_status(report)


def cmd_graph(args) -> int:
    g, rep = _load_graph(args.input)
    basis = rep.dual.basis if rep is not None and rep.dual.kind == "r_line" else None
    sys.stdout.write(export_json(g) if args.format == "json" else export_dot(g, basis))
    return EXIT_OK


def cmd_fusion_pow(args) -> int:
    rep = _load_rep(args.input)
    if args.k < 0:
        raise InputError("-k must be non-negative")
    dec = tensor_power_decompose(rep, args.k)
    if args.json:
        items = [{"irrep": rep.ring.label(a), "character": rep.dual.to_json(ch), "mult": m}
                 for (a, ch), m in dec.items()]
        sys.stdout.write(json.dumps(items, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_decomposition(rep, dec) + "\n")
    return EXIT_OK


def cmd_ideals(args) -> int:
    g, _ = _load_graph(args.input)
    sets = hereditary_saturated_sets(g)
    if args.json:
        out = [[g.vertices[v] for v in sorted(s)] for s in sets]
        sys.stdout.write(json.dumps(out, ensure_ascii=False) + "\n")
    else:
        for s in sets:
            sys.stdout.write(render_set(g, s) + "\n")
    return EXIT_OK


def cmd_ktheory(args) -> int:
    g, _ = _load_graph(args.input)
    kt = k_theory(g)
    sys.stdout.write(json.dumps(kt.to_json(), sort_keys=True) + "\n" if args.json else f"{kt}\n")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest
    return EXIT_OK if run_selftest() else EXIT_UNKNOWN


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="sign tolerance for real characters (default 1e-9)")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help="tensor-power search depth where no exact procedure exists (default 32)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="qfree",
        description="Decide simplicity, pure infiniteness and isometric shift-absorption "
                    "of quasi-free actions on Cuntz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full analysis report")
    p.add_argument("input", help="input document (JSON), or - for stdin")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", parents=[common], help="export the fusion graph")
    p.add_argument("input")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("fusion-pow", parents=[common], help="decompose a tensor power")
    p.add_argument("input")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_fusion_pow)

    p = sub.add_parser("ideals", parents=[common], help="hereditary saturated vertex sets")
    p.add_argument("input", help="input document or graph JSON")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("ktheory", parents=[common], help="K-theory of the graph algebra")
    p.add_argument("input", help="input document or graph JSON")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("selftest", parents=[common], help="run the packaged invariant suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AmbiguousSign as exc:
        print(f"error: ambiguous sign: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputError, UnknownIrrep, ValueError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownIrrep) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
