"""Command-line interface: ``gumbel-communities {cluster,evaluate,benchmark,export}``.

Exit codes: 0 on success (including skipped benchmark rows), 1 when
``benchmark --strict`` sees a failing row, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench
from .datasets import DATASETS, data_dir
from .dot import export_dot
from .graph import GraphError, Partition
from .io import ParseError, read_graph, read_partition_csv, write_partition_csv
from .metrics import evaluate
from .train import TrainConfig, train

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _resolve_dataset(arg: str) -> Path:
    path = Path(arg)
    if path.exists():
        return path
    if arg in DATASETS:
        candidate = data_dir() / DATASETS[arg].filename
        if candidate.exists():
            return candidate
    raise InputError(f"cannot read dataset {arg!r}: no such file")


def _load_graph(arg: str):
    path = _resolve_dataset(arg)
    try:
        return read_graph(path).graph
    except (OSError, ParseError, GraphError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_partition(arg: str) -> Partition:
    try:
        return read_partition_csv(Path(arg).read_text())
    except OSError as exc:
        raise InputError(f"cannot read partition {arg!r}: {exc.strerror}") from exc
    except ParseError as exc:
        raise InputError(f"{arg}: {exc}") from exc


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_cluster(args) -> int:
    g = _load_graph(args.dataset)
    if args.k < 1 or args.k > g.n:
        raise InputError(f"--k must be between 1 and the node count {g.n}, got {args.k}")
    try:
        cfg = TrainConfig(
            k=args.k, epochs=args.epochs, learning_rate=args.lr, restarts=args.restarts,
            tau_start=args.tau_start, tau_end=args.tau_end, seed=args.seed,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    truth = _load_partition(args.truth) if args.truth else None
    result = train(g, cfg)
    part = result.best_partition
    report = evaluate(g, part, truth)

    stem = Path(args.dataset).stem
    out = Path(args.out) if args.out else Path(f"{stem}.k{args.k}")
    _write(out.with_name(out.name + ".partition.csv"), write_partition_csv(part))
    _write(out.with_name(out.name + ".loss.csv"), result.loss_csv())
    if args.dot:
        _write(Path(args.dot), export_dot(g, part, name=stem))

    if args.json:
        record = bench.RunRecord(stem, "CDCGS", args.k, args.seed, report.modularity, 0.0, report, part)
        payload = record.to_dict()
        payload.pop("wall_time")
        print(json.dumps(payload))
    else:
        print(f"modularity {report.modularity:.4f}")
        if truth is not None:
            _print_report(report)
    return EXIT_OK


def _print_report(report):
    for name in report.FIELDS:
        value = getattr(report, name)
        if value is not None:
            print(f"{name} {value:.4f}")


def cmd_evaluate(args) -> int:
    g = _load_graph(args.dataset)
    pred = _load_partition(args.partition)
    truth = _load_partition(args.truth) if args.truth else None
    if pred.n != g.n:
        raise InputError(f"partition has {pred.n} labels but graph has {g.n} nodes")
    if truth is not None and truth.n != pred.n:
        raise InputError(f"truth has {truth.n} labels but partition has {pred.n}")
    report = evaluate(g, pred, truth)
    if args.json:
        print(report.to_json())
    else:
        _print_report(report)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    directory = Path(args.datasets_dir) if args.datasets_dir else data_dir()
    algorithms = [a.strip() for a in args.algorithms.split(",")] if args.algorithms else bench.REPRODUCED
    unknown = set(algorithms) - set(bench.ALGORITHMS)
    if unknown:
        raise InputError(f"unknown algorithms: {', '.join(sorted(unknown))}")
    datasets = [d.strip() for d in args.datasets.split(",")] if args.datasets else None
    rows = bench.run_benchmark(directory, algorithms, seeds=args.seeds, datasets=datasets)
    timing = not args.no_timing
    print(bench.format_table(rows, timing), end="")
    if args.csv:
        _write(Path(args.csv), bench.rows_to_csv(rows, timing))
    counts = bench.summarize(rows)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    if args.strict and counts["FAIL"]:
        return EXIT_FAIL
    return EXIT_OK


def cmd_export(args) -> int:
    g = _load_graph(args.dataset)
    part = _load_partition(args.partition)
    if part.n != g.n:
        raise InputError(f"partition has {part.n} labels but graph has {g.n} nodes")
    _write(Path(args.out), export_dot(g, part, name=Path(args.dataset).stem))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gumbel-communities", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    defaults = TrainConfig()
    p = sub.add_parser("cluster", help="cluster a graph with Gumbel-softmax training")
    p.add_argument("dataset", help="KONECT file, edge list (.edges) or known dataset name")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--restarts", type=int, default=defaults.restarts)
    p.add_argument("--epochs", type=int, default=defaults.epochs)
    p.add_argument("--lr", type=float, default=defaults.learning_rate)
    p.add_argument("--tau-start", type=float, default=defaults.tau_start)
    p.add_argument("--tau-end", type=float, default=defaults.tau_end)
    p.add_argument("--truth", help="ground-truth partition CSV to score against")
    p.add_argument("--out", help="output prefix (default: <dataset>.k<k> in the working directory)")
    p.add_argument("--dot", help="also write a coloured DOT file here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="score a partition")
    p.add_argument("dataset")
    p.add_argument("partition")
    p.add_argument("truth", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("benchmark", help="reproduce the modularity comparison table")
    p.add_argument("datasets_dir", nargs="?")
    p.add_argument("--algorithms", help=f"comma-separated subset of {','.join(bench.REPRODUCED)}")
    p.add_argument("--datasets", help="comma-separated dataset names")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--csv", help="write the table as CSV here")
    p.add_argument("--strict", action="store_true", help="exit 1 if any row fails")
    p.add_argument("--no-timing", action="store_true", help="leave the seconds column empty")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("export", help="write a coloured DOT file")
    p.add_argument("dataset")
    p.add_argument("partition")
    p.add_argument("out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
