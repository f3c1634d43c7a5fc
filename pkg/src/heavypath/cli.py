"""Command-line entry point: ``heavypath {topk,bench,community,convert,generate}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bench as benchmod
from . import community as comm
from . import generators
from .algorithms import ALGORITHMS, run_topk
from .errors import GraphFormatError, PreconditionError
from .graph import (
    WeightedGraph,
    build_cooccurrence_dice,
    build_from_itemsets,
    cooccurrence_counts,
    dumps_edge_list,
    load_edge_list,
    load_itemsets,
    normalize_weights,
    transform_c_minus_w,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    """``"2-4"`` -> [2, 3, 4]; ``"1,5,10"`` -> [1, 5, 10]."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part.strip()[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like '2-4' or '1,5,10', got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty range")
    return out


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(args) -> WeightedGraph:
    g = load_edge_list(_read_text(args.graph))
    if getattr(args, "normalize", False):
        g = normalize_weights(g)
    c = getattr(args, "transform_c", None)
    if c is not None:
        g = transform_c_minus_w(g, c, strict=False)
    return g


def cmd_topk(args) -> int:
    g = _load_graph(args)
    result = run_topk(
        g,
        args.length,
        args.k,
        args.algo,
        agg=args.agg,
        tight_theta=args.tight_theta,
        lazy=args.lazy,
        record=args.log is not None,
    )
    if args.log is not None and result.log is not None:
        _write_text(args.log, result.log.to_tsv(g))
    paths = [{"nodes": list(p.labels(g)), "weight": p.weight} for p in result.paths]
    if args.out == "json":
        report = {"paths": paths, "stats": result.stats.as_dict(), "exhausted": result.exhausted}
        if result.boundary_tie:
            report["boundary_tie"] = True
        print(json.dumps(report, indent=2))
        return EXIT_OK
    if args.out == "tsv":
        print("weight\tpath")
        for p in paths:
            print(f"{p['weight']!r}\t{' '.join(p['nodes'])}")
    else:
        for p in paths:
            print(f"{p['weight']!r}\t{' - '.join(p['nodes'])}")
        if not paths:
            print("(no paths)")
    if result.exhausted:
        print(f"# exhausted: fewer than {args.k} simple paths of length {args.length}")
    if result.boundary_tie:
        print("# boundary_tie: another path ties the last reported weight")
    if args.stats:
        for name, value in result.stats.as_dict().items():
            print(f"# {name}={value}")
    return EXIT_OK


def cmd_bench(args) -> int:
    g = _load_graph(args)
    spec = benchmod.BenchSpec(
        algorithms=args.algos,
        lengths=args.lengths,
        ks=args.ks,
        repetitions=args.reps,
        time_budget_ms=args.time_budget_ms,
        max_buffered=args.max_buffered,
        agg=args.agg,
        tight_theta=args.tight_theta,
        lazy=args.lazy,
        graph_path=args.graph,
        workers=args.workers,
    )
    records = benchmod.run_bench(g, spec)
    _write_text(args.out, benchmod.records_csv(records))
    if args.curve_out is not None:
        _write_text(args.curve_out, benchmod.curve_csv(benchmod.curve_from_records(records)))
    bad = benchmod.disagreements(records)
    if bad:
        cells = ", ".join(f"(l={l}, k={k})" for l, k in bad)
        print(f"warning: algorithms disagree on top-1 weight at {cells}", file=sys.stderr)
    return EXIT_OK


def cmd_community(args) -> int:
    g = _load_graph(args)
    ks = sorted(set(args.zoom + [args.k])) if args.zoom else [args.k]
    levels = comm.zoom(g, args.length, ks, args.support, algo=args.algo, strict=args.strict, lazy=args.lazy)
    text = comm.report_json(levels) if args.format == "json" else comm.report_text(levels)
    _write_text(args.output, text)
    return EXIT_OK


def cmd_convert(args) -> int:
    text = _read_text(args.input)
    if args.mode == "itemsets":
        g = build_from_itemsets(load_itemsets(text))
    elif args.mode == "cooccurrence":
        pairs, items = cooccurrence_counts(load_itemsets(text))
        g = build_cooccurrence_dice(pairs, items)
    elif args.mode == "normalize":
        g = normalize_weights(load_edge_list(text))
    else:
        if args.c is None:
            raise UsageError("c-minus-w needs --c")
        g = transform_c_minus_w(load_edge_list(text), args.c)
    _write_text(args.output, dumps_edge_list(g))
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "k6":
        g = generators.k6()
    elif args.kind == "random":
        g = generators.random_graph(args.nodes, args.p, args.seed)
    elif args.kind == "sparse":
        g = generators.random_sparse_graph(args.nodes, args.edges, args.seed)
    else:
        g = generators.adversarial_family(args.decoys)
    _write_text(args.output, dumps_edge_list(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heavypath", description="Exact top-k heaviest simple paths of a fixed length.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_flags(p, with_algo=True):
        p.add_argument("--graph", required=True, help="edge list: 'source destination weight' per line")
        p.add_argument("--normalize", action="store_true", help="divide all weights by the maximum first")
        p.add_argument("--transform-c", type=float, default=None, metavar="C", help="replace weights w by C - w")
        p.add_argument("--agg", choices=("sum", "logprod"), default="sum")
        if with_algo:
            p.add_argument("--algo", choices=sorted(ALGORITHMS), default="rsa")
        p.add_argument(
            "--tight-theta",
            action="store_true",
            help="RSA: refresh the next-length threshold from the released path weight",
        )
        p.add_argument("--lazy", action="store_true", help="RSA: build extensions only when they reach the buffer top")

    p = sub.add_parser("topk", help="print the k heaviest paths")
    graph_flags(p)
    p.add_argument("--length", "-l", type=int, required=True)
    p.add_argument("--k", "-k", type=int, required=True)
    p.add_argument("--out", choices=("text", "json", "tsv"), default="text")
    p.add_argument("--stats", action="store_true", help="also print run counters")
    p.add_argument("--log", metavar="FILE", help="write the construction log as TSV (dfs, saa, rsa)")
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("bench", help="run an algorithm x length x k grid and emit CSV")
    graph_flags(p, with_algo=False)
    p.add_argument("--algos", type=lambda s: s.split(","), default=["saa", "rsa"])
    p.add_argument("--lengths", type=_int_list, required=True)
    p.add_argument("--ks", type=_int_list, default=[1])
    p.add_argument("--reps", type=_positive_int, default=1)
    p.add_argument("--time-budget-ms", type=float, default=None)
    p.add_argument("--max-buffered", type=_positive_int, default=None, help="cap on buffered paths per run")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", default=None, help="CSV destination (default stdout)")
    p.add_argument("--curve-out", default=None, help="write heaviest weight per length as CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("community", help="mine community cores from the top-k paths")
    graph_flags(p)
    p.add_argument("--length", "-l", type=int, required=True)
    p.add_argument("--k", "-k", type=int, required=True)
    p.add_argument("--support", type=int, required=True)
    p.add_argument("--zoom", type=_int_list, default=None, metavar="K1,K2,...")
    p.add_argument("--strict", action="store_true", help="require support strictly above the threshold")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_community)

    p = sub.add_parser("convert", help="build or transform edge-list files")
    p.add_argument("mode", choices=("itemsets", "cooccurrence", "normalize", "c-minus-w"))
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--c", type=float, default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("generate", help="write a synthetic graph")
    p.add_argument("kind", choices=("k6", "random", "sparse", "adversarial"))
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--edges", type=int, default=20)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--decoys", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"heavypath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GraphFormatError) as exc:
        print(f"heavypath: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"heavypath: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
