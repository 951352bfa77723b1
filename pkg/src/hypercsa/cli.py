"""Command-line frontend.

Subcommands: compress, decompress, query, stats, bench. Exit codes:
0 success, 2 usage, 3 input parse or validation error, 4 index load
error, 5 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import (
    EdgeListParseError,
    HypercsaError,
    IndexFormatError,
    InternalInvariantError,
    QueryUsageError,
    UnknownLabelError,
    ValidationError,
)
from .index import HyperIndex
from .kernels import BACKEND
from .model import parse_edge_list, write_edge_list
from .naive import NaiveEngine
from .permutation import DEFAULT_SAMPLE_PERIOD

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INDEX = 4
EXIT_INTERNAL = 5


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hypercsa",
        description="Compress hypergraph edge lists into a queryable self-index.",
    )
    parser.add_argument("--version", action="version", version=f"hypercsa {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="increase log verbosity"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="edge list file -> index file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument(
        "--t",
        "--sample-period",
        dest="sample_period",
        type=int,
        default=DEFAULT_SAMPLE_PERIOD,
        help="absolute sample spacing in the permutation encoding (default 128)",
    )

    p = sub.add_parser("decompress", help="index file -> edge list file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("query", help="run one query or a batch file")
    p.add_argument("-i", "--index", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--contains", metavar="LABELS")
    mode.add_argument("--exists", metavar="LABELS")
    mode.add_argument("--degree", metavar="LABEL")
    mode.add_argument("--batch", metavar="FILE")
    p.add_argument("--engine", choices=("hypercsa", "naive"), default="hypercsa")

    p = sub.add_parser("stats", help="report index size breakdown")
    p.add_argument("-i", "--index", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bench", help="time a query batch against a loaded index")
    p.add_argument("-i", "--index", required=True)
    p.add_argument("--batch", required=True)
    p.add_argument("--engine", choices=("hypercsa", "naive"), default="hypercsa")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


def _parse_labels(text):
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise QueryUsageError(f"labels must be integers: {text!r}") from None


def parse_batch_line(line):
    """One query per line: 'c:1,2' contains, 'e:1,2' exists, 'd:1' degree."""
    prefix, _, rest = line.partition(":")
    modes = {"c": "contains", "e": "exists", "d": "degree"}
    if prefix not in modes or not rest.strip():
        raise QueryUsageError(f"bad batch line: {line!r}")
    return modes[prefix], _parse_labels(rest)


def load_batch(path):
    queries = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                queries.append(parse_batch_line(line))
    return queries


class _QueryRunner:
    """Uniform query surface over either engine."""

    def __init__(self, index: HyperIndex, engine: str):
        self.index = index
        if engine == "naive":
            g = index.decompress()
            self.target = NaiveEngine.from_hypergraph(g, index.node_map)
        else:
            self.target = index

    def run(self, mode, labels):
        if mode == "degree":
            if len(labels) != 1:
                raise QueryUsageError("degree takes exactly one label")
            return self.target.degree(labels[0])
        if mode == "contains":
            return self.target.contains(labels)
        return self.target.exists(labels)


def _format_result(mode, result):
    if mode == "contains":
        return ";".join(",".join(str(v) for v in edge) for edge in result)
    return str(result)


def cmd_compress(args):
    with open(args.input, "r", encoding="utf-8") as fh:
        graph, node_map = parse_edge_list(fh)
    from .builder import build_index

    index = build_index(graph, sample_period=args.sample_period, node_map=node_map)
    written = index.save(args.output)
    input_bytes = os.path.getsize(args.input)
    ratio = written / input_bytes if input_bytes else float("inf")
    print(
        f"incidences={graph.incidence_count} nodes={graph.node_count} "
        f"edges={graph.edge_count} bytes={written} ratio={ratio:.4f}"
    )
    return 0


def cmd_decompress(args):
    index = HyperIndex.load(args.input)
    graph = index.decompress()
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(write_edge_list(graph, index.node_map))
    print(f"edges={graph.edge_count} incidences={graph.incidence_count}")
    return 0


def cmd_query(args):
    index = HyperIndex.load(args.index)
    runner = _QueryRunner(index, args.engine)
    if args.batch:
        batch = load_batch(args.batch)
    elif args.degree is not None:
        batch = [("degree", _parse_labels(args.degree))]
    elif args.contains is not None:
        batch = [("contains", _parse_labels(args.contains))]
    else:
        batch = [("exists", _parse_labels(args.exists))]
    for mode, labels in batch:
        print(_format_result(mode, runner.run(mode, labels)))
    return 0


def cmd_stats(args):
    index = HyperIndex.load(args.index)
    stats = index.stats()
    stats["backend"] = BACKEND
    if args.json:
        print(json.dumps(stats, indent=2, sort_keys=True))
        return 0
    print(f"nodes            {stats['node_count']}")
    print(f"edges            {stats['edge_count']}")
    print(f"incidences       {stats['incidence_count']}")
    print(f"sample period    {stats['sample_period']}")
    print(f"file bytes       {stats['file_bytes']}")
    print(f"D payload bits   {stats['d_payload_bits']}")
    print(f"D rank dir bits  {stats['d_rank_dir_bits']}")
    print(f"D select bits    {stats['d_select_dir_bits']}")
    print(f"psi stream bits  {stats['psi_stream_bits']}")
    print(f"psi sample bits  {stats['psi_sample_bits']}")
    print(f"identity map     {stats['node_map_identity']}")
    print(f"node map bytes   {stats['node_map_bytes']}")
    print(f"backend          {stats['backend']}")
    return 0


def cmd_bench(args):
    index = HyperIndex.load(args.index)
    runner = _QueryRunner(index, args.engine)
    batch = load_batch(args.batch)
    if not batch:
        raise QueryUsageError("batch file holds no queries")
    # Index load stays outside the timed region; the batch is timed as a whole.
    start = time.perf_counter()
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            list(pool.map(lambda q: runner.run(*q), batch))
    else:
        for mode, labels in batch:
            runner.run(mode, labels)
    elapsed = time.perf_counter() - start
    report = {
        "engine": args.engine,
        "backend": BACKEND,
        "queries": len(batch),
        "threads": args.threads,
        "total_seconds": round(elapsed, 6),
        "avg_ms_per_query": round(elapsed / len(batch) * 1000.0, 6),
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(
            f"{report['queries']} queries engine={report['engine']} "
            f"backend={report['backend']} threads={report['threads']} "
            f"total={report['total_seconds']:.3f}s "
            f"avg={report['avg_ms_per_query']:.3f}ms"
        )
    return 0


_COMMANDS = {
    "compress": cmd_compress,
    "decompress": cmd_decompress,
    "query": cmd_query,
    "stats": cmd_stats,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except QueryUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EdgeListParseError, ValidationError, UnknownLabelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IndexFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDEX
    except (InternalInvariantError, HypercsaError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
