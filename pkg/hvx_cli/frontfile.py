"""
FrontFile reading and writing.

One point per line, coordinates separated by whitespace. Lines starting with
'#' are comments and blank lines separate fronts. Values are written with 17
significant digits so that every float64 survives a round trip.
"""

import math
import sys
from typing import Iterable, List, Sequence, Tuple

from hvx.errors import DimensionMismatchError
from hvx.geometry import Front, make_front

from .errors import FrontFileError

RawFront = List[Tuple[float, ...]]


def format_value(value: float) -> str:
    return f"{float(value):.17g}"


def parse_fronts(text: str) -> List[RawFront]:
    """
    Parse every front in a FrontFile text.

    Returns:
        One list of points per front; a text without points yields one empty front

    Raises:
        FrontFileError: On unparsable tokens, NaN/inf, d < 2 or ragged fronts
    """
    fronts: List[RawFront] = []
    current: RawFront = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            if current:
                fronts.append(current)
                current = []
            continue
        try:
            point = tuple(float(token) for token in stripped.split())
        except ValueError:
            raise FrontFileError(f"not a number in {stripped!r}", number)
        if not all(math.isfinite(c) for c in point):
            raise FrontFileError(f"non-finite coordinate in {stripped!r}", number)
        if len(point) < 2:
            raise FrontFileError(f"points need at least 2 coordinates, got {len(point)}", number)
        if current and len(point) != len(current[0]):
            raise FrontFileError(f"expected {len(current[0])} coordinates, got {len(point)}", number)
        current.append(point)
    if current or not fronts:
        fronts.append(current)
    return fronts


def read_fronts(path: str) -> List[RawFront]:
    """Read a FrontFile from a path, or from stdin when path is '-'."""
    if path == "-":
        return parse_fronts(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_fronts(handle.read())
    except OSError as exc:
        raise FrontFileError(f"cannot read {path}: {exc.strerror}")


def to_front(points: RawFront, ref: Sequence[float]) -> Front:
    """Turn parsed points into a Front and check them against the reference dimension."""
    if not points:
        return make_front([], dim=len(ref))
    front = make_front(points)
    if front.dim != len(ref):
        raise DimensionMismatchError(f"front has d={front.dim}, reference point has d={len(ref)}")
    return front


def format_front(points: Iterable[Sequence[float]]) -> str:
    return "".join(" ".join(format_value(c) for c in point) + "\n" for point in points)


def format_fronts(fronts: Iterable[Iterable[Sequence[float]]]) -> str:
    return "\n".join(format_front(front) for front in fronts)
