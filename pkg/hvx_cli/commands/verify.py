"""
verify command - randomized cross-checks of the library against its oracles
"""

import argparse
import logging

from hvx.config import Settings

from ..suites.verifier import CHECKS, PropertyVerifier

logger = logging.getLogger(__name__)

# Exit status when any check disagrees with its oracle.
DISAGREEMENT_EXIT = 10


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="run the randomized property suite")
    parser.add_argument("--budget", type=int, default=None, help=f"cases per check (default {PropertyVerifier.DEFAULT_CASES})")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=None, help="worker processes (default HVX_WORKERS)")
    parser.add_argument("--check", action="append", choices=list(CHECKS), dest="checks", help="run only this check (repeatable)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    workers = settings.workers if args.workers is None else args.workers
    verifier = PropertyVerifier(cases=args.budget, seed=args.seed, workers=workers, checks=args.checks)
    summary = verifier.run()

    for entry in summary["checks"]:
        status = "PASS" if not entry["failures"] else "FAIL"
        line = f"{status} {entry['name']} cases={entry['cases']} failures={entry['failures']}"
        if entry["first_failure"] is not None:
            line += f" first={entry['first_failure']['index']}: {entry['first_failure']['failure']}"
        print(line)

    total = len(summary["checks"])
    failed = len(summary["failed_checks"])
    print(f"{total - failed}/{total} checks passed (seed={summary['seed']})")
    if not summary["passed"]:
        logger.error("[cli.verify] failed_checks=%s", ",".join(summary["failed_checks"]))
        return DISAGREEMENT_EXIT
    return 0
