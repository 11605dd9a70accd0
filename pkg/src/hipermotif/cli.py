"""Command-line front end: ``match``, ``generate`` and ``bench``."""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .bench import Instance, ablate_reorder, ablation_instances, run_bench
from .engine import ENGINES, MatchConfig, run_engine
from .errors import HiPerMotifError, PatternTooSmall
from .generators import FAMILIES, AttributeSchema, GeneratorSpec, generate, load_generator_spec
from .io import dumps_edge_list, load_edge_list


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [_positive_int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _engine_list(text: str) -> list[str]:
    names = [t for t in text.split(",") if t]
    for name in names:
        if name not in ENGINES:
            raise argparse.ArgumentTypeError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}")
    return names


def _attr_spec(text: str) -> tuple[str, tuple[str, ...]]:
    key, sep, values = text.partition("=")
    alphabet = tuple(v for v in values.split(",") if v)
    if not sep or not key or not alphabet:
        raise argparse.ArgumentTypeError(f"expected KEY=A,B,..., got {text!r}")
    return key, alphabet


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--semantics", choices=("iso", "mono"), default="mono")
    p.add_argument("--limit", type=_positive_int, default=None, metavar="K",
                   help="stop after K embeddings")
    p.add_argument("--no-reorder", action="store_true", help="keep the pattern's vertex order")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hipermotif", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", help="enumerate embeddings of a pattern in a target")
    m.add_argument("--pattern", required=True, help="pattern edge-list file")
    m.add_argument("--target", required=True, help="target edge-list file")
    m.add_argument("--engine", choices=ENGINES, default="hipermotif")
    m.add_argument("--workers", type=_positive_int, default=1)
    m.add_argument("--emit", action="store_true",
                   help="print every embedding (implied by --limit)")
    m.add_argument("--verify", action="store_true", help="re-check each embedding")
    _add_common(m)

    g = sub.add_parser("generate", help="write a synthetic graph as an edge list")
    g.add_argument("family", nargs="?", choices=FAMILIES)
    g.add_argument("--config", help="generator spec file of key=value lines")
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int)
    for name in ("alpha", "beta", "gamma", "delta-in", "delta-out"):
        g.add_argument(f"--{name}", type=float)
    g.add_argument("--vertex-attr", type=_attr_spec, action="append", default=[],
                   metavar="KEY=A,B", help="uniform vertex attribute (repeatable)")
    g.add_argument("--edge-attr", type=_attr_spec, action="append", default=[],
                   metavar="KEY=A,B", help="uniform edge attribute (repeatable)")
    g.add_argument("-o", "--output", default=None)

    b = sub.add_parser("bench", help="timed runs with confidence intervals and speedups")
    b.add_argument("--target", nargs="+", default=[], help="target edge-list files")
    b.add_argument("--pattern", nargs="+", default=[], help="pattern edge-list files")
    b.add_argument("--engine", type=_engine_list, default=None,
                   help="comma-separated engines (default: hipermotif; vf2ps with --ablate-reorder)")
    b.add_argument("--workers", type=_int_list, default=[1], help="comma-separated worker counts")
    b.add_argument("--reps", type=_positive_int, default=5)
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--dump-dir", default="hipermotif-disagreement",
                   help="where a disagreeing instance is written")
    b.add_argument("--ablate-reorder", action="store_true",
                   help="time each instance with reordering off and on")
    b.add_argument("--instances", type=_positive_int, default=20,
                   help="random instances for --ablate-reorder without --pattern")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--time-limit", type=float, default=None, metavar="SECONDS",
                   help="cap each run of --ablate-reorder")
    b.add_argument("--semantics", choices=("iso", "mono"), default="mono")
    b.add_argument("--limit", type=_positive_int, default=None, metavar="K")
    b.add_argument("-o", "--output", default=None)
    return parser


def cmd_match(args: argparse.Namespace) -> int:
    pattern = load_edge_list(args.pattern, allow_self_loops=args.engine != "hipermotif")
    target = load_edge_list(args.target)
    config = MatchConfig(args.semantics, reorder=not args.no_reorder,
                         worker_count=args.workers, match_limit=args.limit, verify=args.verify)
    try:
        result = run_engine(args.engine, pattern, target, config)
    except PatternTooSmall as exc:
        raise PatternTooSmall(
            f"{exc}; use --engine vf2ps for single-vertex or edgeless patterns") from None
    lines = [f"count={len(result)}"]
    if args.emit or args.limit is not None:
        lines.extend(" ".join(map(str, emb)) for emb in result.original())
    _write("\n".join(lines) + "\n", args.output)
    return 0


def _spec_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> GeneratorSpec:
    overrides = {
        "family": args.family, "n": args.n, "p": args.p, "k": args.k, "seed": args.seed,
        "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
        "delta_in": args.delta_in, "delta_out": args.delta_out,
    }
    vertex = dict(args.vertex_attr)
    edge = dict(args.edge_attr)
    if args.config:
        spec = load_generator_spec(args.config, **overrides)
        if vertex or edge:
            merged = AttributeSchema({**spec.schema.vertex, **vertex}, {**spec.schema.edge, **edge})
            spec = replace(spec, schema=merged)
        return spec
    if args.family is None:
        parser.error("generate needs a family (er, ws, scale_free) or --config")
    if args.n is None:
        parser.error("generate needs --n")
    if args.family in ("er", "ws") and args.p is None:
        parser.error(f"generate {args.family} needs --p")
    if args.family == "ws" and args.k is None:
        parser.error("generate ws needs --k")
    fields = {k: v for k, v in overrides.items() if v is not None}
    return GeneratorSpec(schema=AttributeSchema(vertex, edge), **fields)


def cmd_generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    spec = _spec_from_args(args, parser)
    _write(dumps_edge_list(generate(spec)), args.output)
    return 0


def _load_timed(path: str, allow_self_loops: bool = True):
    t0 = time.perf_counter()
    g = load_edge_list(path, allow_self_loops=allow_self_loops)
    return g, time.perf_counter() - t0


def cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.ablate_reorder:
        engines = args.engine or ["vf2ps"]
        if len(engines) != 1:
            parser.error("--ablate-reorder compares one engine with itself; pass a single --engine")
        if args.target and args.pattern:
            instances = _file_instances(args)
        elif args.target or args.pattern:
            parser.error("--ablate-reorder needs both --target and --pattern, or neither")
        else:
            instances = ablation_instances(args.instances, args.seed)
        report = ablate_reorder(instances, engines[0], args.reps, args.semantics,
                                args.limit, args.time_limit)
    else:
        if not args.target or not args.pattern:
            parser.error("bench needs --target and --pattern files")
        report = run_bench(_file_instances(args), args.engine or ["hipermotif"], args.workers,
                           args.reps, args.semantics, args.limit, args.dump_dir)
    _write(report.render(args.format), args.output)
    return 0


def _file_instances(args: argparse.Namespace) -> list[Instance]:
    patterns = [(p, load_edge_list(p, allow_self_loops=False)) for p in args.pattern]
    out = []
    for t in args.target:
        target, load_s = _load_timed(t)
        out.extend(Instance(t, target, name, pattern, load_s) for name, pattern in patterns)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "match":
            return cmd_match(args)
        if args.command == "generate":
            return cmd_generate(args, parser)
        return cmd_bench(args, parser)
    except (HiPerMotifError, OSError, ValueError) as exc:
        print(f"hipermotif {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
