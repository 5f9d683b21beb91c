"""
gen command - write a seeded nondominated front
"""

import argparse
import logging

from hvx.config import Settings

from ..frontfile import format_front
from ..generators import FrontKind, generate

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("gen", help="generate a nondominated front")
    parser.add_argument("--kind", required=True, choices=[k.value for k in FrontKind])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--d", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="output path (stdout when omitted)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    points = generate(args.kind, args.n, args.d, args.seed)
    text = f"# kind={args.kind} n={args.n} d={args.d} seed={args.seed}\n" + format_front(points)
    if args.out is None:
        print(text, end="")
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("[cli.gen] wrote=%s points=%s", args.out, len(points))
    return 0
