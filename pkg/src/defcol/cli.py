"""Command-line front end.

Exit codes: 0 yes/valid, 1 no/invalid, 64 usage error, 65 malformed input,
66 graph outside the forced engine's class, 69 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BudgetExceeded, ClassMismatch, ContractError, DataError, ParseError
from .generators import GENERATORS, generate
from .graph import DEFAULT_BUDGET, Instance, answer_to_json, coloring_from_json, format_dimacs, parse_graph, verify_coloring
from .reductions import (
    FourPartitionInstance,
    SetSplittingInstance,
    parse_cnf,
    reduce_3sat,
    reduce_fp_to_multipartite,
    reduce_set_splitting,
)
from .solve import ENGINES, solve

EX_YES, EX_NO, EX_USAGE, EX_DATAERR, EX_CLASS, EX_BUDGET = 0, 1, 64, 65, 66, 69


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def cmd_solve(args, engine: str | None = None) -> int:
    graph = parse_graph(_read(args.graph))
    instance = Instance(graph, args.chi, args.delta)
    engine = engine or args.engine
    budget = args.budget or None
    coloring, graph_class = solve(instance, engine, budget)
    extra = {"class": graph_class} if engine == "auto" else {"engine": engine}
    _emit(answer_to_json(args.chi, args.delta, coloring, **extra), args.out)
    return EX_YES if coloring is not None else EX_NO


def cmd_verify(args) -> int:
    graph = parse_graph(_read(args.graph))
    colors, meta = coloring_from_json(_read(args.coloring))
    chi = args.chi if args.chi is not None else meta.get("chi")
    delta = args.delta if args.delta is not None else meta.get("delta")
    if chi is None or delta is None:
        raise UsageError("--chi and --delta are required when the coloring file does not carry them")
    report = verify_coloring(Instance(graph, chi, delta), colors)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EX_YES if report.valid else EX_NO


def cmd_reduce(args) -> int:
    text = _read(args.input)
    out = Path(args.out)
    if args.kind == "sat":
        if args.delta is None or args.delta < 1:
            raise UsageError("reduce sat needs --delta >= 1")
        red = reduce_3sat(parse_cnf(text), args.delta)
    elif args.kind == "setsplit":
        if args.chi is None or args.chi < 2:
            raise UsageError("reduce setsplit needs --chi >= 2")
        red = reduce_set_splitting(SetSplittingInstance.from_json(text), args.chi)
    else:
        mp = reduce_fp_to_multipartite(FourPartitionInstance.from_json(text))
        out.with_suffix(".json").write_text(mp.to_json() + "\n")
        print(json.dumps({"kind": "4part", "parts": len(mp.parts), "vertices": mp.num_vertices,
                          "chi": mp.chi, "delta": mp.delta}, sort_keys=True))
        return EX_YES
    g = red.instance.graph
    out.with_suffix(".col").write_text(format_dimacs(g, [f"reduced {args.kind} instance"]))
    out.with_suffix(".json").write_text(json.dumps(red.to_dict(), sort_keys=True) + "\n")
    print(json.dumps({"kind": args.kind, "vertices": g.n, "edges": g.m, "clique": red.clique_size,
                      "chi": red.instance.chi, "delta": red.instance.delta}, sort_keys=True))
    return EX_YES


def cmd_gen(args) -> int:
    graph = generate(args.graph_class, args.n, args.seed)
    text = format_dimacs(graph, [f"random {args.graph_class} n={args.n} seed={args.seed}"])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EX_YES


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="defcol", description="Exact Defective Coloring with certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_args(sp):
        sp.add_argument("graph", help="DIMACS .col file")
        sp.add_argument("--chi", type=_positive, required=True)
        sp.add_argument("--delta", type=_nonneg, required=True)
        sp.add_argument("--out", help="also write the answer JSON here")
        sp.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET,
                        help=f"node limit for the brute-force engine (default {DEFAULT_BUDGET}, 0 = none)")

    sp = sub.add_parser("solve", help="decide an instance and print a certificate")
    instance_args(sp)
    sp.add_argument("--engine", choices=ENGINES, default="auto")

    sp = sub.add_parser("oracle", help="solve with the brute-force engine")
    instance_args(sp)

    sp = sub.add_parser("verify", help="check a coloring")
    sp.add_argument("graph")
    sp.add_argument("coloring", help="answer JSON or a bare JSON list of colors")
    sp.add_argument("--chi", type=_positive)
    sp.add_argument("--delta", type=_nonneg)

    sp = sub.add_parser("reduce", help="build a reduced instance from a hard problem")
    sp.add_argument("kind", choices=("sat", "setsplit", "4part"))
    sp.add_argument("input")
    sp.add_argument("--out", required=True, help="output path prefix")
    sp.add_argument("--delta", type=int)
    sp.add_argument("--chi", type=int)

    sp = sub.add_parser("gen", help="random member of a graph class")
    sp.add_argument("graph_class", metavar="class", choices=sorted(GENERATORS))
    sp.add_argument("n", type=_positive)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "oracle":
            return cmd_solve(args, engine="brute")
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "reduce":
            return cmd_reduce(args)
        return cmd_gen(args)
    except UsageError as exc:
        print(f"defcol: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ParseError, DataError, ContractError) as exc:
        print(f"defcol: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ClassMismatch as exc:
        print(json.dumps({"error": str(exc), "class": exc.graph_class, "witness": list(exc.witness)}),
              file=sys.stderr)
        return EX_CLASS
    except BudgetExceeded as exc:
        print(f"defcol: {exc}", file=sys.stderr)
        return EX_BUDGET


if __name__ == "__main__":
    sys.exit(main())
