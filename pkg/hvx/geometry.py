"""
Dominance algebra and point-set hygiene shared by every hvx algorithm.

Minimisation is assumed throughout: p weakly dominates q when p_i <= q_i for
every objective i. Comparisons are exact, no tolerance is applied.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatchError, InvalidPointError, PolicyViolationError

logger = logging.getLogger(__name__)

Point = Tuple[float, ...]
ReferencePoint = Point


class NondominanceFlag(str, Enum):
    """Tri-state certificate attached to a Front."""
    UNKNOWN = "unknown"
    VERIFIED = "verified"
    VIOLATED = "violated"


class ClipPolicy(str, Enum):
    """How validate_front treats points outside the reference box."""
    CLIP = "clip"
    STRICT = "strict"


@dataclass(frozen=True)
class Front:
    """
    An ordered collection of points sharing one dimension.

    Attributes:
        points: (n, d) read-only float64 array, one row per point
        nondominated: Certificate stating whether no point weakly dominates another
    """
    points: np.ndarray
    nondominated: NondominanceFlag = NondominanceFlag.UNKNOWN

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def __iter__(self) -> Iterator[Point]:
        for row in self.points:
            yield tuple(float(c) for c in row)

    def point(self, index: int) -> Point:
        return tuple(float(c) for c in self.points[index])

    def subset(self, indices: Sequence[int]) -> "Front":
        """Front of the given rows, in the given order."""
        idx = np.asarray(list(indices), dtype=np.intp)
        flag = NondominanceFlag.VERIFIED if self.nondominated == NondominanceFlag.VERIFIED else NondominanceFlag.UNKNOWN
        return make_front(self.points[idx], dim=self.dim, nondominated=flag)

    def to_list(self) -> List[List[float]]:
        return self.points.tolist()

    def __repr__(self) -> str:
        return f"Front(n={len(self)}, d={self.dim}, nondominated='{self.nondominated.value}')"


def make_point(coords: Sequence[float]) -> Point:
    """
    Validate a coordinate vector and return it as a tuple of floats.

    Raises:
        InvalidPointError: If a coordinate is NaN/infinite or d < 2
    """
    values = tuple(float(c) for c in coords)
    if len(values) < 2:
        raise InvalidPointError(f"points need at least 2 objectives, got {len(values)}")
    if not all(np.isfinite(values)):
        raise InvalidPointError(f"point has non-finite coordinates: {values}")
    return values


def make_front(
    points: Union["Front", np.ndarray, Sequence[Sequence[float]]],
    dim: Optional[int] = None,
    nondominated: NondominanceFlag = NondominanceFlag.UNKNOWN,
) -> Front:
    """
    Build a Front from any array-like of points.

    Args:
        points: Existing Front, (n, d) array or sequence of coordinate sequences
        dim: Required dimension; mandatory when points is empty
        nondominated: Certificate to attach

    Raises:
        InvalidPointError: On non-finite coordinates, ragged input or d < 2
        DimensionMismatchError: If dim is given and differs from the data
    """
    if isinstance(points, Front):
        if dim is not None and points.dim != dim:
            raise DimensionMismatchError(f"front has d={points.dim}, expected d={dim}")
        return points
    arr = np.array(points, dtype=float)
    if arr.size == 0:
        if dim is None:
            if arr.ndim == 2 and arr.shape[1] >= 2:
                dim = arr.shape[1]
            else:
                raise InvalidPointError("an empty front needs an explicit dimension")
        arr = np.empty((0, dim), dtype=float)
    if arr.ndim != 2:
        raise InvalidPointError(f"points must form an (n, d) array, got shape {arr.shape}")
    if arr.shape[1] < 2:
        raise InvalidPointError(f"points need at least 2 objectives, got {arr.shape[1]}")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatchError(f"front has d={arr.shape[1]}, expected d={dim}")
    if not np.all(np.isfinite(arr)):
        raise InvalidPointError("front contains non-finite coordinates")
    arr.setflags(write=False)
    return Front(points=arr, nondominated=nondominated)


def check_reference(r: Sequence[float], dim: int) -> ReferencePoint:
    """Validate a reference point against the dimension of the front it bounds."""
    ref = make_point(r)
    if len(ref) != dim:
        raise DimensionMismatchError(f"reference point has d={len(ref)}, front has d={dim}")
    return ref


def _pair(p: Sequence[float], q: Sequence[float]) -> Tuple[Point, Point]:
    if len(p) != len(q):
        raise DimensionMismatchError(f"cannot compare d={len(p)} with d={len(q)}")
    return tuple(p), tuple(q)


def weakly_dominates(p: Sequence[float], q: Sequence[float]) -> bool:
    p, q = _pair(p, q)
    return all(a <= b for a, b in zip(p, q))


def strictly_dominates(p: Sequence[float], q: Sequence[float]) -> bool:
    p, q = _pair(p, q)
    return all(a <= b for a, b in zip(p, q)) and any(a < b for a, b in zip(p, q))


def strongly_dominates(p: Sequence[float], q: Sequence[float]) -> bool:
    p, q = _pair(p, q)
    return all(a < b for a, b in zip(p, q))


def join(p: Sequence[float], q: Sequence[float]) -> Point:
    """Component-wise maximum of two points."""
    p, q = _pair(p, q)
    return tuple(max(float(a), float(b)) for a, b in zip(p, q))


def project_drop_last(x: Union[Front, Sequence[float]]) -> Union[Front, Point]:
    """
    Drop the last objective of a point or of every point of a front.

    The projection of a nondominated front may contain dominated points, so the
    certificate of a projected Front is reset to UNKNOWN.
    """
    if isinstance(x, Front):
        if x.dim < 3:
            raise DimensionMismatchError(f"cannot project a d={x.dim} front below 2 objectives")
        return make_front(x.points[:, :-1], dim=x.dim - 1)
    point = tuple(float(c) for c in x)
    if len(point) < 3:
        raise DimensionMismatchError(f"cannot project a d={len(point)} point below 2 objectives")
    return point[:-1]


def dominance_matrix(points: np.ndarray) -> np.ndarray:
    """Boolean (n, n) table whose entry [i, j] tells whether row i weakly dominates row j."""
    pts = np.asarray(points, dtype=float)
    return np.all(pts[:, None, :] <= pts[None, :, :], axis=2)


def nondominated_indices(points: np.ndarray) -> np.ndarray:
    """
    Indices (ascending) of the rows not weakly dominated by an earlier-kept row.

    Rows are visited in lexicographic order, so any dominator of a row is seen
    before it; among equal rows only the first occurrence survives.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.intp)
    order = np.lexsort(pts.T[::-1])
    kept: List[int] = []
    if pts.shape[1] == 2:
        best_y = np.inf
        for i in order:
            y = pts[i, 1]
            if y < best_y:
                kept.append(int(i))
                best_y = y
    else:
        front = np.empty_like(pts)
        size = 0
        for i in order:
            row = pts[i]
            if size and np.any(np.all(front[:size] <= row, axis=1)):
                continue
            front[size] = row
            size += 1
            kept.append(int(i))
    return np.array(sorted(kept), dtype=np.intp)


def is_nondominated(points: np.ndarray) -> bool:
    return len(nondominated_indices(points)) == len(points)


def nondominated_filter(front: Union[Front, np.ndarray, Sequence[Sequence[float]]]) -> Front:
    """Drop weakly dominated points (keeping the first of any duplicates); the result is VERIFIED."""
    front = make_front(front)
    kept = nondominated_indices(front.points)
    return make_front(front.points[kept], dim=front.dim, nondominated=NondominanceFlag.VERIFIED)


def certify(front: Front) -> Front:
    """Return the front with its nondominance certificate resolved to VERIFIED or VIOLATED."""
    if front.nondominated != NondominanceFlag.UNKNOWN:
        return front
    flag = NondominanceFlag.VERIFIED if is_nondominated(front.points) else NondominanceFlag.VIOLATED
    return Front(points=front.points, nondominated=flag)


def equal_rows(points: np.ndarray, p: Sequence[float]) -> np.ndarray:
    """Boolean mask of rows equal to p."""
    return np.all(np.asarray(points) == np.asarray(p, dtype=float), axis=1)


def index_of(front: Union[Front, np.ndarray], p: Sequence[float]) -> Optional[int]:
    """First index of a row equal to p (value equality), or None."""
    pts = front.points if isinstance(front, Front) else np.asarray(front)
    if len(pts) == 0:
        return None
    matches = np.flatnonzero(equal_rows(pts, p))
    return int(matches[0]) if len(matches) else None


@dataclass(frozen=True)
class DelimiterSet:
    """
    Delimiters of the contribution of a point to a set.

    Attributes:
        point: The point whose contribution is delimited
        inner: Indices of delimiters q with point <= q
        outer: Indices of the outer delimiters (delimiters of the contribution to
            the points not weakly dominated by point)
        joined_points: The nondominated set J of joins, H(p, S) = H({p}) - H(J)
    """
    point: Point
    inner: List[int] = field(default_factory=list)
    outer: List[int] = field(default_factory=list)
    joined_points: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))

    @property
    def delimiters(self) -> List[int]:
        return sorted(self.inner + self.outer)


def _delimiting(joins: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Nondominated joins and a mask of which input joins are among them."""
    if len(joins) == 0:
        return joins, np.zeros(0, dtype=bool)
    kept = joins[nondominated_indices(joins)]
    mask = np.any(np.all(joins[:, None, :] == kept[None, :, :], axis=2), axis=1)
    return kept, mask


def bound_and_filter(p: Sequence[float], front: Union[Front, np.ndarray, Sequence[Sequence[float]]]) -> DelimiterSet:
    """
    Project the points of a front onto the region dominated by p and filter them.

    Points equal to p are ignored, so p need not be in the front.
    """
    p = make_point(p)
    front = make_front(front, dim=len(p))
    pts = front.points
    others = np.flatnonzero(~equal_rows(pts, p)) if len(pts) else np.empty(0, dtype=np.intp)
    joins = np.maximum(pts[others], np.asarray(p))
    joined, is_delimiter = _delimiting(joins)

    inner_mask = np.all(pts[others] >= np.asarray(p), axis=1) if len(others) else np.zeros(0, dtype=bool)
    inner = [int(others[i]) for i in np.flatnonzero(is_delimiter & inner_mask)]

    outer_rows = np.flatnonzero(~inner_mask)
    _, outer_delim = _delimiting(joins[outer_rows])
    outer = [int(others[outer_rows[i]]) for i in np.flatnonzero(outer_delim)]

    if len(joined) == 0:
        joined = np.empty((0, len(p)))
    return DelimiterSet(point=p, inner=inner, outer=outer, joined_points=joined)


def clip_mask(points: np.ndarray, r: Sequence[float]) -> np.ndarray:
    """Rows that weakly dominate r, i.e. have a (possibly empty) box [p, r]."""
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        return np.zeros(0, dtype=bool)
    return np.all(pts <= np.asarray(r, dtype=float), axis=1)


def validate_front(
    front: Union[Front, np.ndarray, Sequence[Sequence[float]]],
    r: Sequence[float],
    policy: Union[ClipPolicy, str] = ClipPolicy.CLIP,
) -> Front:
    """
    Enforce the reference-point condition on a front.

    Args:
        front: Points to check
        r: Reference point
        policy: CLIP drops points that do not weakly dominate r (logging how many);
            STRICT requires every point to strongly dominate r

    Raises:
        PolicyViolationError: Under STRICT, naming the first offending index
    """
    policy = ClipPolicy(policy)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(r))
    front = make_front(front)
    ref = check_reference(r, front.dim)
    pts = front.points
    if policy == ClipPolicy.STRICT:
        bad = np.flatnonzero(~np.all(pts < np.asarray(ref), axis=1)) if len(pts) else []
        if len(bad):
            index = int(bad[0])
            raise PolicyViolationError(
                f"point {index} {front.point(index)} does not strongly dominate reference {ref}", index
            )
        return front
    mask = clip_mask(pts, ref)
    dropped = int(len(pts) - mask.sum())
    if dropped:
        logger.warning("[validate] dropped=%s kept=%s reason=outside_reference_box", dropped, int(mask.sum()))
        flag = NondominanceFlag.VERIFIED if front.nondominated == NondominanceFlag.VERIFIED else NondominanceFlag.UNKNOWN
        return make_front(pts[mask], dim=front.dim, nondominated=flag)
    return front


def box_volume(p: Sequence[float], r: Sequence[float]) -> float:
    """Volume of [p, r]; zero when p does not weakly dominate r."""
    vol = 1.0
    for a, b in zip(p, r):
        side = float(b) - float(a)
        if side <= 0.0:
            return 0.0
        vol *= side
    return vol
