"""
Sub-commands. Each module exposes register(subparsers) and run(args, settings) -> int.
"""

import argparse
import math
from typing import Tuple


def parse_reference(text: str) -> Tuple[float, ...]:
    """argparse type for --ref r1,...,rd."""
    try:
        values = tuple(float(token) for token in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"reference point must be comma-separated numbers, got {text!r}")
    if len(values) < 2 or not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"reference point needs at least 2 finite coordinates, got {text!r}")
    return values


def parse_int_list(text: str) -> Tuple[int, ...]:
    """argparse type for comma-separated integer lists such as --sizes 100,1000."""
    try:
        values = tuple(int(token) for token in text.split(",") if token.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def add_front_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="FrontFile path, or - for stdin")
    parser.add_argument("--ref", required=True, type=parse_reference, metavar="R1,...,RD", help="reference point")
