"""
Exact hypervolume indicator.

Dimension-specialised sweeps for d = 2, 3, 4, the WFG recursion for any d,
contribution-based updates and the local upper bounds of a front.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import oracles
from .errors import DimensionMismatchError, MembershipError, NondominanceError
from .geometry import (
    Front,
    NondominanceFlag,
    ReferencePoint,
    box_volume,
    certify,
    check_reference,
    clip_mask,
    index_of,
    make_front,
    make_point,
    nondominated_indices,
    validate_front,
)
from .staircase import Staircase

logger = logging.getLogger(__name__)

FrontLike = Union[Front, np.ndarray, Sequence[Sequence[float]]]

# Relative slack before a negative decremental result is reported.
NEGATIVE_TOLERANCE = 1e-9


class Algorithm(str, Enum):
    HV2D = "2d"
    HV3D = "3d"
    HV4D = "4d"
    WFG = "wfg"
    HSO = "hso"
    INCLUSION_EXCLUSION = "ie"
    GRID = "grid"
    UPDATE = "update"


class UpdateMode(str, Enum):
    INCREMENTAL = "incremental"
    DECREMENTAL = "decremental"


@dataclass(frozen=True)
class HvResult:
    """
    Attributes:
        value: Hypervolume, never negative
        algorithm: Algorithm that produced the value
        n_used: Points left after clipping to the reference box
    """
    value: float
    algorithm: Algorithm
    n_used: int

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "algorithm": self.algorithm.value, "n_used": self.n_used}

    def __float__(self) -> float:
        return self.value


def prepare(front: FrontLike, r: Sequence[float], dim: Optional[int] = None) -> Tuple[Front, ReferencePoint]:
    """Validate inputs, clip the front to the reference box and check its dimension."""
    ref = make_point(r)
    front = make_front(front, dim=len(ref)) if _is_empty(front) else make_front(front)
    ref = check_reference(ref, front.dim)
    if dim is not None and front.dim != dim:
        raise DimensionMismatchError(f"algorithm needs d={dim}, front has d={front.dim}")
    return validate_front(front, ref), ref


def _is_empty(front: FrontLike) -> bool:
    if isinstance(front, Front):
        return False
    return len(front) == 0


# ---- array kernels (inputs already clipped to the reference box) ----

def _hv2d(pts: np.ndarray, ref: Sequence[float]) -> float:
    if len(pts) == 0:
        return 0.0
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    xs = pts[order, 0]
    ys = pts[order, 1]
    running = np.minimum.accumulate(ys)
    previous = np.concatenate(([float(ref[1])], running[:-1]))
    slabs = (float(ref[0]) - xs) * np.maximum(previous - ys, 0.0)
    return math.fsum(slabs)


def _hv3d(pts: np.ndarray, ref: Sequence[float]) -> float:
    if len(pts) == 0:
        return 0.0
    order = np.lexsort((pts[:, 1], pts[:, 0], pts[:, 2]))
    stair = Staircase(ref[0], ref[1])
    slices: List[float] = []
    prev_z = None
    for x, y, z in pts[order]:
        if prev_z is not None and z > prev_z:
            slices.append(stair.area * (z - prev_z))
        stair.insert(x, y)
        prev_z = z
    slices.append(stair.area * (float(ref[2]) - prev_z))
    return math.fsum(slices)


def _exclusive_3d(p: np.ndarray, others: np.ndarray, ref: Sequence[float]) -> float:
    """
    Three-objective contribution of p by one z-sweep over its joins.

    The joins max(q, p) are swept in ascending z; the uncovered part of p's
    (x, y) box weighs each slab. Dominated joins never enter the staircase,
    so no nondominated filtering is needed. O(n log n).
    """
    inclusive = box_volume(p, ref)
    if inclusive == 0.0:
        return 0.0
    if len(others) == 0:
        return inclusive
    joins = np.maximum(others, p)
    joins = joins[np.all(joins < np.asarray(ref, dtype=float), axis=1)]
    if len(joins) == 0:
        return inclusive
    joins = joins[np.argsort(joins[:, 2], kind="stable")]
    base = (float(ref[0]) - p[0]) * (float(ref[1]) - p[1])
    stair = Staircase(ref[0], ref[1])
    slices: List[float] = []
    z_prev = float(p[2])
    for x, y, z in joins:
        if z > z_prev:
            slices.append((base - stair.area) * (z - z_prev))
            z_prev = z
        stair.insert(x, y)
        if stair.dominated(p[0], p[1]):
            return max(0.0, math.fsum(slices))
    slices.append((base - stair.area) * (float(ref[2]) - z_prev))
    return max(0.0, math.fsum(slices))


def _hv4d(pts: np.ndarray, ref: Sequence[float]) -> float:
    if len(pts) == 0:
        return 0.0
    ref3 = tuple(ref[:3])
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0], pts[:, 3]))
    visited = np.empty((0, 3))
    base = 0.0
    slices: List[float] = []
    prev_w = None
    for row in pts[order]:
        p3, w = row[:3], row[3]
        if prev_w is not None and w > prev_w:
            slices.append(base * (w - prev_w))
        prev_w = w
        if len(visited) and np.any(np.all(visited <= p3, axis=1)):
            continue
        base += _exclusive_3d(p3, visited, ref3)
        survivors = ~np.all(visited >= p3, axis=1) if len(visited) else np.zeros(0, dtype=bool)
        visited = np.vstack((visited[survivors], p3))
    slices.append(base * (float(ref[3]) - prev_w))
    return math.fsum(slices)


def _wfg(pts: np.ndarray, ref: Sequence[float]) -> float:
    n, d = pts.shape
    if n == 0:
        return 0.0
    if d == 2:
        return _hv2d(pts, ref)
    if n == 1:
        return box_volume(pts[0], ref)
    order = np.argsort(pts[:, -1], kind="stable")
    ordered = pts[order]
    projected = ordered[:, :-1]
    ref_low = tuple(ref[:-1])
    terms: List[float] = []
    for i in range(n):
        height = float(ref[-1]) - ordered[i, -1]
        if height <= 0.0:
            continue
        p = projected[i]
        previous = projected[:i]
        if i and np.any(np.all(previous <= p, axis=1)):
            continue
        inclusive = box_volume(p, ref_low)
        if i == 0:
            terms.append(height * inclusive)
            continue
        joins = np.maximum(previous, p)
        joins = joins[nondominated_indices(joins)]
        terms.append(height * max(0.0, inclusive - _wfg(joins, ref_low)))
    return math.fsum(terms)


def objective_order(pts: np.ndarray) -> np.ndarray:
    """Objective permutation by descending coordinate variance (stable on ties)."""
    if len(pts) < 2:
        return np.arange(pts.shape[1])
    return np.argsort(-np.var(pts, axis=0), kind="stable")


def _wfg_reordered(pts: np.ndarray, ref: Sequence[float]) -> float:
    perm = objective_order(pts)
    return _wfg(pts[:, perm], tuple(np.asarray(ref, dtype=float)[perm]))


def hv_array(pts: np.ndarray, ref: Sequence[float]) -> float:
    """Hypervolume of an already clipped (n, d) array using the fastest kernel for d."""
    d = pts.shape[1]
    if d == 2:
        return _hv2d(pts, ref)
    if d == 3:
        return _hv3d(pts, ref)
    if d == 4:
        return _hv4d(pts, ref)
    return _wfg_reordered(pts, ref)


def exclusive_volume(p: Sequence[float], others: np.ndarray, ref: Sequence[float]) -> float:
    """
    Volume dominated by p and by no row of others, H({p}) - H(J).

    Rows equal to p are treated as other points, so a duplicate of p leaves it
    nothing. Rows outside the reference box are ignored.
    """
    p = np.asarray(p, dtype=float)
    inclusive = box_volume(p, ref)
    if inclusive == 0.0:
        return 0.0
    others = np.asarray(others, dtype=float).reshape(-1, len(p))
    if len(others) == 0:
        return inclusive
    if np.any(np.all(others <= p, axis=1)):
        return 0.0
    if len(p) == 3:
        return _exclusive_3d(p, others, ref)
    joins = np.maximum(others, p)
    joins = joins[clip_mask(joins, ref)]
    if len(joins) == 0:
        return inclusive
    joins = joins[nondominated_indices(joins)]
    return max(0.0, inclusive - hv_array(joins, ref))


# ---- public operations ----

def hv_2d(front: FrontLike, r: Sequence[float]) -> HvResult:
    """
    Two-objective hypervolume by a single sweep in ascending x.

    Raises:
        DimensionMismatchError: If d != 2
    """
    clipped, ref = prepare(front, r, dim=2)
    return HvResult(_hv2d(clipped.points, ref), Algorithm.HV2D, len(clipped))


def hv_3d(front: FrontLike, r: Sequence[float]) -> HvResult:
    """Three-objective hypervolume by a z-sweep over a staircase of (x, y) projections."""
    clipped, ref = prepare(front, r, dim=3)
    return HvResult(_hv3d(clipped.points, ref), Algorithm.HV3D, len(clipped))


def hv_4d(front: FrontLike, r: Sequence[float]) -> HvResult:
    """Four-objective hypervolume: w-sweep adding each 3D projected contribution to the base volume."""
    clipped, ref = prepare(front, r, dim=4)
    return HvResult(_hv4d(clipped.points, ref), Algorithm.HV4D, len(clipped))


def hv_wfg(front: FrontLike, r: Sequence[float]) -> HvResult:
    """
    WFG recursion for any d >= 2.

    Objectives are reordered once by descending variance, then points are swept
    in ascending last coordinate, each slab weighted by the bounded contribution
    of its projection.
    """
    clipped, ref = prepare(front, r)
    return HvResult(_wfg_reordered(clipped.points, ref), Algorithm.WFG, len(clipped))


_BY_DIMENSION = {2: Algorithm.HV2D, 3: Algorithm.HV3D, 4: Algorithm.HV4D}
_FIXED_DIMENSION = {algorithm: d for d, algorithm in _BY_DIMENSION.items()}
_KERNELS = {
    Algorithm.HV2D: _hv2d,
    Algorithm.HV3D: _hv3d,
    Algorithm.HV4D: _hv4d,
    Algorithm.WFG: _wfg_reordered,
    Algorithm.HSO: oracles.hv_hso,
    Algorithm.INCLUSION_EXCLUSION: oracles.hv_inclusion_exclusion,
    Algorithm.GRID: oracles.hv_grid,
}


def hv(front: FrontLike, r: Sequence[float], algorithm: Optional[Union[Algorithm, str]] = None) -> HvResult:
    """
    Compute the hypervolume indicator of a front.

    Args:
        front: Points to measure; points not weakly dominating r are clipped
        r: Reference point
        algorithm: Explicit algorithm ("auto" or None dispatches on d)

    Returns:
        HvResult with the value and the algorithm used

    Raises:
        DimensionMismatchError: If a specialised algorithm is forced on another d
        BudgetExceededError: If an oracle algorithm is forced beyond its budget
    """
    clipped, ref = prepare(front, r)
    if algorithm is None or algorithm == "auto":
        algorithm = _BY_DIMENSION.get(clipped.dim, Algorithm.WFG)
    algorithm = Algorithm(algorithm)
    logger.debug("[hv] algorithm=%s", algorithm.value)

    required = _FIXED_DIMENSION.get(algorithm)
    if required is not None and clipped.dim != required:
        raise DimensionMismatchError(f"algorithm needs d={required}, front has d={clipped.dim}")
    kernel = _KERNELS.get(algorithm)
    if kernel is None:
        raise ValueError(f"algorithm '{algorithm.value}' cannot evaluate a front from scratch")
    return HvResult(kernel(clipped.points, ref), algorithm, len(clipped))


def update_hv(
    front: FrontLike,
    r: Sequence[float],
    known_hv: float,
    p: Sequence[float],
    mode: Union[UpdateMode, str] = UpdateMode.INCREMENTAL,
) -> HvResult:
    """
    Update a known hypervolume by adding or removing one point.

    Args:
        front: The set the known value belongs to
        r: Reference point
        known_hv: H(front)
        p: Point to add (must not be in front) or remove (must be in front)
        mode: INCREMENTAL or DECREMENTAL

    Returns:
        HvResult for the updated set

    Raises:
        MembershipError: If the membership precondition of the mode is violated
    """
    mode = UpdateMode(mode)
    ref = make_point(r)
    front = make_front(front, dim=len(ref)) if _is_empty(front) else make_front(front)
    ref = check_reference(ref, front.dim)
    p = make_point(p)
    if len(p) != front.dim:
        raise DimensionMismatchError(f"point has d={len(p)}, front has d={front.dim}")

    pts = front.points
    found = index_of(pts, p)
    if mode == UpdateMode.INCREMENTAL:
        if found is not None:
            raise MembershipError(f"cannot add {p}: already in the front at index {found}")
        value = float(known_hv) + exclusive_volume(p, pts, ref)
        remaining = np.vstack((pts, np.asarray(p)))
    else:
        if found is None:
            raise MembershipError(f"cannot remove {p}: not in the front")
        remaining = np.delete(pts, found, axis=0)
        value = float(known_hv) - exclusive_volume(p, remaining, ref)
        if value < -NEGATIVE_TOLERANCE * max(1.0, abs(float(known_hv))):
            logger.warning("[update_hv] mode=decremental result=%s known_hv=%s reason=known_hv_too_small", value, known_hv)
        value = max(0.0, value)

    n_used = int(clip_mask(remaining, ref).sum())
    logger.debug("[update_hv] mode=%s n_used=%s", mode.value, n_used)
    return HvResult(value, Algorithm.UPDATE, n_used)


@dataclass(frozen=True)
class LocalUpperBoundSet:
    """
    Maximal corners of the search region {q <= r : no p in source strongly dominates q}.

    Attributes:
        bounds: (m, d) array of corners, none weakly dominating another
        source: Front the bounds were built from
    """
    bounds: np.ndarray
    source: Front

    def __len__(self) -> int:
        return int(self.bounds.shape[0])

    def to_list(self) -> List[List[float]]:
        return self.bounds.tolist()


def _maximal(points: np.ndarray) -> np.ndarray:
    return points[nondominated_indices(-points)]


def local_upper_bounds(front: FrontLike, r: Sequence[float], require_nondominated: bool = True) -> LocalUpperBoundSet:
    """
    Build the local upper bounds of a front incrementally.

    Starting from {r}, each point p strongly dominating r splits every bound u
    with p < u into its d children (u with coordinate j set to p_j); the
    maximal elements of the result are kept.

    Raises:
        NondominanceError: If require_nondominated and the front has a weakly dominated point
    """
    ref = make_point(r)
    front = make_front(front, dim=len(ref)) if _is_empty(front) else make_front(front)
    ref = check_reference(ref, front.dim)
    if require_nondominated and len(front) and certify(front).nondominated == NondominanceFlag.VIOLATED:
        raise NondominanceError("local upper bounds need a nondominated front")

    ref_arr = np.asarray(ref)
    bounds = ref_arr.reshape(1, -1).copy()
    for i, p in enumerate(front.points):
        if not np.all(p < ref_arr):
            logger.debug("[lub] skipped index=%s reason=not_strongly_dominating_reference", i)
            continue
        affected = np.all(p < bounds, axis=1)
        if not affected.any():
            continue
        children = []
        for j in range(front.dim):
            child = bounds[affected].copy()
            child[:, j] = p[j]
            children.append(child)
        bounds = _maximal(np.vstack([bounds[~affected]] + children))
    logger.debug("[lub] n=%s bounds=%s", len(front), len(bounds))
    bounds.setflags(write=False)
    return LocalUpperBoundSet(bounds=bounds, source=front)


def in_search_region(q: Sequence[float], front: FrontLike, r: Sequence[float]) -> bool:
    """Closure membership: q <= r and no point of the front strongly dominates q."""
    q = np.asarray(make_point(q))
    if not np.all(q <= np.asarray(r, dtype=float)):
        return False
    pts = front.points if isinstance(front, Front) else np.asarray(front, dtype=float).reshape(-1, len(q))
    if len(pts) == 0:
        return True
    return not bool(np.any(np.all(pts < q, axis=1)))
