"""
hv command - hypervolume of every front in a file
"""

import argparse
import logging

from hvx.config import Settings
from hvx.hypervolume import Algorithm, hv

from ..errors import MethodMismatchError
from ..frontfile import format_value, read_fronts, to_front
from . import add_front_arguments

logger = logging.getLogger(__name__)

ALGORITHM_CHOICES = ("auto", "2d", "3d", "4d", "wfg", "hso", "ie", "grid")
_FIXED_DIMENSION = {Algorithm.HV2D: 2, Algorithm.HV3D: 3, Algorithm.HV4D: 4}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("hv", help="hypervolume of each front")
    add_front_arguments(parser)
    parser.add_argument("--algorithm", default="auto", choices=ALGORITHM_CHOICES)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    fronts = read_fronts(args.file)
    for points in fronts:
        front = to_front(points, args.ref)
        algorithm = None if args.algorithm == "auto" else Algorithm(args.algorithm)
        required = _FIXED_DIMENSION.get(algorithm)
        if required is not None and front.dim != required:
            raise MethodMismatchError(f"algorithm '{algorithm.value}' needs d={required}, front has d={front.dim}")
        result = hv(front, args.ref, algorithm)
        logger.debug("[cli.hv] n=%s n_used=%s algorithm=%s", len(front), result.n_used, result.algorithm.value)
        print(format_value(result.value))
    return 0
