"""
hvx command-line entry point
"""

import argparse
import logging
import sys
from typing import Optional, Sequence, Tuple, Type

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from hvx import __version__
from hvx.config import Settings, load_settings
from hvx.errors import DimensionMismatchError, HvxError

from .commands import bench, contrib, gen, hssp, hv, verify
from .errors import FrontFileError, GenerationError, MethodMismatchError, PointIndexError

logger = logging.getLogger(__name__)

COMMANDS = (hv, contrib, hssp, gen, verify, bench)

# First match wins, so subclasses come before their bases.
EXIT_CODES: Tuple[Tuple[Tuple[Type[BaseException], ...], int], ...] = (
    ((FrontFileError,), 2),
    ((MethodMismatchError,), 5),
    ((DimensionMismatchError,), 3),
    ((PointIndexError,), 4),
    ((GenerationError,), 6),
    ((HvxError, ValueError), 1),
)


def exit_code_for(exc: BaseException) -> Optional[int]:
    for types, code in EXIT_CODES:
        if isinstance(exc, types):
            return code
    return None


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser and register every sub-command"""
    parser = argparse.ArgumentParser(prog="hvx", description="Exact hypervolume toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(settings: Settings, verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s %(message)s",
    )
    # Slope summaries are part of the bench output.
    if not verbose:
        logging.getLogger("hvx_cli.suites.bench").setLevel(min(level, logging.INFO))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    settings = load_settings()
    configure_logging(settings, args.verbose)
    logger.debug("[cli] command=%s settings=%s", args.command, settings)

    try:
        return args.handler(args, settings)
    except Exception as exc:
        code = exit_code_for(exc)
        if code is None:
            raise
        logger.debug("[cli] command=%s failed", args.command, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return code
