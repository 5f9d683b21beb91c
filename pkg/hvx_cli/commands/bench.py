"""
bench command - time a core algorithm over a grid of sizes and dimensions
"""

import argparse
import logging

from hvx.config import Settings

from ..suites.bench import Suite, fit_slopes, run_bench
from . import parse_int_list

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="write a BenchRecord CSV")
    parser.add_argument("--suite", required=True, choices=[s.value for s in Suite])
    parser.add_argument("--sizes", required=True, type=parse_int_list, metavar="N1,N2,...")
    parser.add_argument("--dims", required=True, type=parse_int_list, metavar="D1,D2,...")
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=None, help="worker processes (default HVX_WORKERS)")
    parser.add_argument("--out", default="-", help="CSV path, or - for stdout")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    if args.reps < 1:
        raise ValueError(f"--reps must be at least 1, got {args.reps}")
    workers = settings.workers if args.workers is None else args.workers
    frame = run_bench(args.suite, args.sizes, args.dims, args.reps, seed=args.seed, workers=workers)
    if args.out == "-":
        print(frame.to_csv(index=False), end="")
    else:
        frame.to_csv(args.out, index=False)
        logger.info("[cli.bench] wrote=%s rows=%s", args.out, len(frame))
    fit_slopes(frame)
    return 0
