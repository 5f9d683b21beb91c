"""
contrib command - one contribution, all contributions or the least contributor
"""

import argparse

from hvx.config import Settings
from hvx.contributions import all_contributions, least_contributor

from ..errors import PointIndexError
from ..frontfile import format_value, read_fronts, to_front
from . import add_front_arguments


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("contrib", help="hypervolume contributions")
    add_front_arguments(parser)
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--point", type=int, metavar="IDX", help="contribution of one point")
    mode.add_argument("--all", action="store_true", help="contribution of every point")
    mode.add_argument("--least", action="store_true", help="least contributor as 'index value'")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    fronts = read_fronts(args.file)
    blocks = []
    for points in fronts:
        front = to_front(points, args.ref)
        if args.least:
            index, value = least_contributor(front, args.ref)
            blocks.append([f"{index} {format_value(value)}"])
            continue
        if args.point is not None and not 0 <= args.point < len(front):
            raise PointIndexError(f"point index {args.point} out of range for a front of {len(front)} points")
        table = all_contributions(front, args.ref)
        if args.all:
            blocks.append([format_value(v) for v in table.values])
        else:
            blocks.append([format_value(table[args.point])])
    print("\n\n".join("\n".join(lines) for lines in blocks))
    return 0
