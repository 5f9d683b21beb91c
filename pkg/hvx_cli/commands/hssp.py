"""
hssp command - hypervolume subset selection
"""

import argparse
import logging
import math
from typing import Any, Dict

from hvx.config import Settings
from hvx.subset import HsspMethod, hssp, hssp_exhaustive

from ..errors import MethodMismatchError
from ..frontfile import format_value, read_fronts, to_front
from . import add_front_arguments

logger = logging.getLogger(__name__)

METHOD_CHOICES = tuple(m.value for m in HsspMethod)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("hssp", help="select at most k points maximising the hypervolume")
    add_front_arguments(parser)
    parser.add_argument("-k", "--k", dest="k", type=int, required=True, help="subset size")
    parser.add_argument("--method", default=HsspMethod.GREEDY_INC.value, choices=METHOD_CHOICES)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--iters", type=int, default=None, help="iterations for ls / gsemo")
    parser.add_argument("--swaps", type=int, default=1, help="swaps per local-search move")
    parser.add_argument("--report-ratio", action="store_true", help="append hv / optimum when enumeration fits the budget")
    parser.set_defaults(handler=run)


def _options(args: argparse.Namespace, method: HsspMethod) -> Dict[str, Any]:
    options: Dict[str, Any] = {"trace": False}
    if method == HsspMethod.LOCAL_SEARCH:
        options.update(seed=args.seed, swaps_per_move=args.swaps)
        if args.iters is not None:
            options["max_iters"] = args.iters
    elif method == HsspMethod.GSEMO:
        options.update(seed=args.seed, max_iters=args.iters)
    return options


def run(args: argparse.Namespace, settings: Settings) -> int:
    method = HsspMethod(args.method)
    fronts = read_fronts(args.file)
    for number, points in enumerate(fronts):
        front = to_front(points, args.ref)
        if method == HsspMethod.EXACT_2D and front.dim != 2:
            raise MethodMismatchError(f"method 'exact2d' needs d=2, front has d={front.dim}")
        solution = hssp(front, args.ref, args.k, method, **_options(args, method))
        if number:
            print()
        print(" ".join(str(i) for i in solution.selected))
        print(format_value(solution.hypervolume))
        if args.report_ratio:
            if math.comb(len(front), args.k) > settings.exhaustive_budget:
                logger.warning("[cli.hssp] ratio skipped: C(%s, %s) exceeds exhaustive budget %s", len(front), args.k, settings.exhaustive_budget)
                continue
            optimum = hssp_exhaustive(front, args.ref, args.k, budget=settings.exhaustive_budget, trace=False).hypervolume
            ratio = solution.hypervolume / optimum if optimum > 0.0 else 1.0
            print(format_value(ratio))
    return 0
