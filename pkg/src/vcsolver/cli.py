"""Command line front end: solve one graph file and print a JSON report."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .engine import SolverConfig, solve
from .ingest import ParseError, load_graph


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vc",
        description="Exact minimum vertex cover solver (parallel branch and reduce).",
    )
    parser.add_argument("path", help="graph file (edge list or Matrix Market)")
    parser.add_argument(
        "--mode",
        choices=("mvc", "pvc"),
        default="mvc",
        help="mvc finds the minimum cover size; pvc decides whether a cover of size k exists",
    )
    parser.add_argument("-k", type=int, default=None, help="cover budget for pvc mode")
    parser.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads (default: hardware parallelism)",
    )
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("auto", "edgelist", "mtx"),
        default="auto",
        help="input format; auto sniffs the Matrix Market banner",
    )
    parser.add_argument(
        "--width",
        type=int,
        choices=(8, 16, 32),
        default=None,
        help="force the per-vertex degree width instead of auto-selecting",
    )
    parser.add_argument(
        "--no-components",
        action="store_true",
        help="never split disconnected residual graphs into separate branches",
    )
    parser.add_argument(
        "--no-root-reduce",
        action="store_true",
        help="skip the whole-graph reduction pass before the search",
    )
    parser.add_argument(
        "--no-bounds",
        action="store_true",
        help="keep every node's scan window at the full vertex range",
    )
    parser.add_argument(
        "--no-crown",
        action="store_true",
        help="skip the crown rule during root reduction",
    )
    parser.add_argument(
        "--no-load-balance",
        action="store_true",
        help="disable work sharing between workers",
    )
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="single-threaded run with a fixed exploration order",
    )
    parser.add_argument(
        "--record-cover",
        action="store_true",
        help="also reconstruct one concrete cover and include it in the report",
    )
    parser.add_argument(
        "--stats", action="store_true", help="include search statistics in the report"
    )
    parser.add_argument(
        "--timeout",
        type=float,
        default=None,
        help="wall-clock budget in seconds; past it the result is marked inexact",
    )
    return parser


def _stats_payload(stats) -> dict:
    payload = stats.as_dict()
    payload["components_per_branch"] = {
        str(k): v for k, v in payload["components_per_branch"].items()
    }
    return payload


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode == "pvc" and args.k is None:
        parser.error("pvc mode requires -k")
    if args.mode == "mvc" and args.k is not None:
        parser.error("-k only applies to pvc mode")

    try:
        graph = load_graph(args.path, args.fmt)
    except ParseError as exc:
        print(f"vc: {args.path}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"vc: {exc}", file=sys.stderr)
        return 1

    config = SolverConfig(
        mode=args.mode,
        k=args.k,
        workers=args.workers,
        use_components=not args.no_components,
        use_root_reduce=not args.no_root_reduce,
        use_bounds=not args.no_bounds,
        use_crown=not args.no_crown,
        load_balance=not args.no_load_balance,
        deterministic=args.deterministic,
        width=args.width,
        record_cover=args.record_cover,
        timeout=args.timeout,
    )
    try:
        result = solve(graph, config)
    except ValueError as exc:
        print(f"vc: {exc}", file=sys.stderr)
        return 1

    payload = {
        "mode": result.mode,
        "cover_size": result.cover_size,
        "found": result.found,
        "exact": result.exact,
    }
    if result.mode == "pvc":
        payload["k"] = result.k
    if args.record_cover:
        payload["cover"] = result.cover
    if args.stats:
        payload["stats"] = _stats_payload(result.stats)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
