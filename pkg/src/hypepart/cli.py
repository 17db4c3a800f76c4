"""Command line front end: ``hypepart {partition,evaluate,generate,sweep}``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 infeasible
parameters, 3 partition file does not match the hypergraph.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import baselines, hype, synth
from .hypergraph import (
    Hypergraph,
    HypergraphFormatError,
    flip,
    load_edge_list,
    load_hmetis,
    write_hmetis,
    write_labels,
)
from .metrics import MetricsReport, evaluate

log = logging.getLogger("hypepart")

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PARAMS = 2
EXIT_MISMATCH = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _int_list(value: str) -> list[int]:
    return [int(x) for x in value.split(",") if x]


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", type=Path, help="hypergraph file")
    p.add_argument("--format", choices=["hmetis", "edgelist"], default="hmetis")


def _add_hype_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="number of partitions")
    p.add_argument("--s", type=int, default=10, help="maximum fringe size (default 10)")
    p.add_argument("--r", type=int, default=2, help="fringe candidates per step (default 2)")
    p.add_argument("--cache", type=_on_off, default=True, help="score cache on|off (default on)")
    p.add_argument(
        "--balance", choices=[m.value for m in hype.BalanceMode], default="vertex",
        help="HYPE balancing scheme (default vertex)",
    )
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypepart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition a hypergraph")
    _add_graph_input(p)
    _add_hype_flags(p)
    p.add_argument("--algo", choices=["hype", "minmax-eb", "minmax-nb", "random"], default="hype")
    p.add_argument("--slack", type=int, default=100, help="MinMax slack (default 100)")
    p.add_argument("--report", choices=["json", "csv"], default="json")
    p.add_argument("--report-out", type=Path, help="metrics file (default stdout)")
    p.add_argument("-o", "--output", type=Path, required=True, help="partition file")

    p = sub.add_parser("evaluate", help="compute metrics of an existing partition file")
    _add_graph_input(p)
    p.add_argument("partition_file", type=Path)
    p.add_argument("--k", type=int, help="number of partitions (default: largest id + 1)")
    p.add_argument("--flipped", action="store_true",
                   help="partition file lists hyperedges (output of --balance flip)")
    p.add_argument("--report", choices=["json", "csv"], default="json")
    p.add_argument("--report-out", type=Path)

    p = sub.add_parser("generate", help="write a synthetic hypergraph in hMETIS format")
    p.add_argument("kind", choices=["planted", "powerlaw"])
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blocks", type=int, default=4)
    p.add_argument("--vertices-per-block", type=int, default=2000)
    p.add_argument("--edges-per-block", type=int, default=3000)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--m", type=int, default=100_000)
    p.add_argument("--exponent", type=float, default=2.5)
    p.add_argument("--size-min", type=int, default=2)
    p.add_argument("--size-max", type=int, default=6, help="max (planted) or cap (powerlaw) edge size")
    p.add_argument("--labels", type=Path, help="ground-truth block per vertex (planted only)")
    p.add_argument("--histogram", type=Path, help="vertex degree histogram CSV")

    p = sub.add_parser("sweep", help="run HYPE over a parameter grid, one CSV row per run")
    _add_graph_input(p)
    _add_hype_flags(p)
    p.add_argument("--axis", choices=["s", "r", "cache"], required=True)
    p.add_argument("--values", required=True, help="comma separated, e.g. 1,10,100 or on,off")
    p.add_argument("--seeds", type=_int_list, default=[0], help="comma separated seeds")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("-o", "--output", type=Path, help="CSV file (default stdout)")
    return parser


def _read_graph(path: Path, fmt: str) -> tuple[Hypergraph, list[str] | None, list[str] | None]:
    try:
        with open(path, "rb") as fh:
            if fmt == "edgelist":
                return load_edge_list(fh)
            return load_hmetis(fh), None, None
    except (OSError, HypergraphFormatError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _emit_report(report: MetricsReport, fmt: str, path: Path | None) -> None:
    text = report.to_json() if fmt == "json" else report.csv_header() + "\n" + report.to_csv_row()
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        path.write_text(text + "\n")


def _write_partition(assignment: list[int], path: Path) -> None:
    with open(path, "w") as fh:
        fh.write("".join(f"{p}\n" for p in assignment))


def _hype_params(args: argparse.Namespace, **overrides) -> hype.HypeParams:
    fields = dict(
        k=args.k, s=args.s, r=args.r, balance_mode=args.balance,
        cache_enabled=args.cache, seed=args.seed,
    )
    fields.update(overrides)
    try:
        return hype.HypeParams(**fields)
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, str(exc)) from None


def cmd_partition(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise CliError(EXIT_PARAMS, f"k must be at least 1, got {args.k}")
    if args.slack < 0:
        raise CliError(EXIT_PARAMS, "slack must be non-negative")
    if args.algo == "hype":
        params = _hype_params(args)
    g, edge_labels, vertex_labels = _read_graph(args.input, args.format)

    if args.algo == "hype":
        items = g.m if params.balance_mode is hype.BalanceMode.FLIP_EDGE_COUNT else g.n
        if args.k > items:
            raise CliError(EXIT_PARAMS, f"k={args.k} exceeds the {items} items to partition")
        try:
            assignment, report = hype.partition(g, params)
        except ValueError as exc:
            raise CliError(EXIT_PARAMS, str(exc)) from None
    else:
        if args.k > g.n:
            raise CliError(EXIT_PARAMS, f"k={args.k} exceeds vertex count {g.n}")
        start = time.perf_counter()
        if args.algo == "random":
            assignment = baselines.random_partition(g, args.k, args.seed)
        else:
            mode = "eb" if args.algo == "minmax-eb" else "nb"
            sp = baselines.StreamingParams(k=args.k, slack=args.slack, mode=mode, seed=args.seed)
            assignment = baselines.minmax_partition(g, sp)
        runtime_ms = (time.perf_counter() - start) * 1000.0
        report = evaluate(g, assignment, args.k, runtime_ms)

    _write_partition(assignment, args.output)
    if vertex_labels is not None:
        with open(f"{args.output}.vlabels", "w") as fh:
            write_labels(vertex_labels, fh)
        with open(f"{args.output}.elabels", "w") as fh:
            write_labels(edge_labels, fh)
    _emit_report(report, args.report, args.report_out)
    return EXIT_OK


def read_partition_file(path: Path) -> list[int]:
    try:
        with open(path) as fh:
            return [int(line) for line in fh if line.strip()]
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def cmd_evaluate(args: argparse.Namespace) -> int:
    if args.k is not None and args.k < 1:
        raise CliError(EXIT_PARAMS, f"k must be at least 1, got {args.k}")
    g, _, _ = _read_graph(args.input, args.format)
    assignment = read_partition_file(args.partition_file)
    if args.flipped:
        try:
            g = flip(g)
        except ValueError as exc:
            raise CliError(EXIT_PARAMS, str(exc)) from None
    if len(assignment) != g.n:
        raise CliError(
            EXIT_MISMATCH, f"partition file has {len(assignment)} entries, expected {g.n}"
        )
    if any(p < 0 for p in assignment):
        raise CliError(EXIT_PARSE, "negative partition id")
    k = args.k if args.k is not None else max(assignment, default=-1) + 1
    if assignment and max(assignment) >= k:
        raise CliError(EXIT_PARAMS, f"partition id {max(assignment)} >= k={k}")
    _emit_report(evaluate(g, assignment, max(k, 1)), args.report, args.report_out)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        if args.kind == "planted":
            planted = synth.generate_planted(synth.PlantedSpec(
                blocks=args.blocks, vertices_per_block=args.vertices_per_block,
                edges_per_block=args.edges_per_block, edge_size_min=args.size_min,
                edge_size_max=args.size_max, noise=args.noise, seed=args.seed,
            ))
            g = planted.graph
            if args.labels:
                args.labels.write_text("".join(f"{b}\n" for b in planted.labels))
        else:
            g = synth.generate_powerlaw(synth.PowerLawSpec(
                n=args.n, m=args.m, exponent=args.exponent, edge_size_min=args.size_min,
                edge_size_cap=args.size_max, seed=args.seed,
            ))
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, str(exc)) from None
    with open(args.output, "w") as fh:
        write_hmetis(g, fh)
    if args.histogram:
        with open(args.histogram, "w") as fh:
            synth.write_histogram_csv(synth.degree_histogram(g), fh)
    return EXIT_OK


def _sweep_values(axis: str, raw: str) -> list:
    tokens = [t for t in raw.split(",") if t]
    if axis == "cache":
        return [_on_off(t) for t in tokens]
    return [int(t) for t in tokens]


def _sweep_run(g: Hypergraph, params: hype.HypeParams) -> tuple[int, float]:
    _, report = hype.partition(g, params)
    return report.k1_cut, report.runtime_ms


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        values = _sweep_values(args.axis, args.values)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise CliError(EXIT_PARAMS, f"bad --values: {exc}") from None
    field = {"s": "s", "r": "r", "cache": "cache_enabled"}[args.axis]
    runs = [(v, seed) for v, seed in itertools.product(values, args.seeds)]
    params = [_hype_params(args, **{field: v, "seed": seed}) for v, seed in runs]
    g, _, _ = _read_graph(args.input, args.format)
    items = g.m if args.balance == "flip" else g.n
    if args.k > items:
        raise CliError(EXIT_PARAMS, f"k={args.k} exceeds the {items} items to partition")

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_run, itertools.repeat(g), params))
    else:
        results = [_sweep_run(g, p) for p in params]

    lines = ["axis,value,seed,k1_cut,runtime_ms"]
    for (value, seed), (cut, runtime_ms) in zip(runs, results):
        shown = ("on" if value else "off") if args.axis == "cache" else value
        lines.append(f"{args.axis},{shown},{seed},{cut},{runtime_ms:.3f}")
    text = "\n".join(lines) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text)
    return EXIT_OK


COMMANDS = {
    "partition": cmd_partition,
    "evaluate": cmd_evaluate,
    "generate": cmd_generate,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    level = logging.getLevelName(os.environ.get("HYPE_LOG", "WARNING").upper())
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"hypepart: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
