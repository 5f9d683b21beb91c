"""
Hypervolume contributions: one point, joint, all points, least contributor and
the incremental/decremental update schemes for one set and for a candidate set
measured against an accepted set.

Value semantics: one_contribution and joint_contribution remove p (and q) from
S by value before measuring. Index semantics: tables are index-aligned with the
front, and a point duplicated elsewhere in the front contributes zero.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatchError, EmptyFrontError, MembershipError, NondominanceError
from .geometry import (
    Front,
    bound_and_filter,
    check_reference,
    clip_mask,
    equal_rows,
    index_of,
    is_nondominated,
    make_front,
    make_point,
    nondominated_indices,
)
from .hypervolume import FrontLike, UpdateMode, exclusive_volume, hv_array
from .staircase import Staircase

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContributionTable:
    """
    Attributes:
        values: Contribution of each point, index-aligned with the front
        total_hv: Hypervolume of the whole front
    """
    values: np.ndarray
    total_hv: float

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> float:
        return float(self.values[index])

    def to_dict(self) -> Dict[str, Any]:
        return {"values": self.values.tolist(), "total_hv": self.total_hv}


def _table(values: np.ndarray, total_hv: float) -> ContributionTable:
    values = np.maximum(np.asarray(values, dtype=float), 0.0)
    values.setflags(write=False)
    return ContributionTable(values=values, total_hv=float(total_hv))


def _inputs(front: FrontLike, r: Sequence[float], p: Optional[Sequence[float]] = None):
    ref = make_point(r)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(ref))
    front = make_front(front)
    ref = check_reference(ref, front.dim)
    if p is None:
        return front, ref
    p = make_point(p)
    if len(p) != front.dim:
        raise DimensionMismatchError(f"point has d={len(p)}, front has d={front.dim}")
    return front, ref, p


def _without_value(points: np.ndarray, *values: Sequence[float]) -> np.ndarray:
    if len(points) == 0:
        return points
    keep = np.ones(len(points), dtype=bool)
    for v in values:
        keep &= ~equal_rows(points, v)
    return points[keep]


def one_contribution(p: Sequence[float], front: FrontLike, r: Sequence[float]) -> float:
    """
    Hypervolume contribution H(p, S minus {p}).

    Args:
        p: Point whose contribution is measured; need not be in the front
        front: The set S
        r: Reference point

    Returns:
        H({p}) - H(J), where J is the bounded and filtered set of joins
    """
    front, ref, p = _inputs(front, r, p)
    return exclusive_volume(p, _without_value(front.points, p), ref)


def joint_contribution(p: Sequence[float], q: Sequence[float], front: FrontLike, r: Sequence[float]) -> float:
    """Volume dominated jointly and exclusively by p and q: H(p v q, S minus {p, q})."""
    front, ref, p = _inputs(front, r, p)
    q = make_point(q)
    if len(q) != len(p):
        raise DimensionMismatchError(f"cannot join d={len(p)} with d={len(q)}")
    joined = np.maximum(np.asarray(p), np.asarray(q))
    return exclusive_volume(joined, _without_value(front.points, p, q), ref)


def strong_delimiters(p: Sequence[float], front: FrontLike, r: Sequence[float]) -> List[int]:
    """Indices of delimiters q of p's contribution with H(p, q, S) > 0."""
    front, ref, p = _inputs(front, r, p)
    delimiters = bound_and_filter(p, front)
    return [q for q in delimiters.delimiters if joint_contribution(p, front.point(q), front, ref) > 0.0]


def set_contribution(subset: FrontLike, front: FrontLike, r: Sequence[float]) -> float:
    """Contribution of a point set: H(X u S) - H(S minus X)."""
    front, ref = _inputs(front, r)
    subset = make_front(subset, dim=front.dim) if not isinstance(subset, Front) and len(subset) == 0 else make_front(subset)
    if subset.dim != front.dim:
        raise DimensionMismatchError(f"subset has d={subset.dim}, front has d={front.dim}")
    union = np.vstack((front.points, subset.points))
    rest = _without_value(front.points, *subset.points)
    with_x = hv_array(union[clip_mask(union, ref)], ref)
    without_x = hv_array(rest[clip_mask(rest, ref)], ref) if len(rest) else 0.0
    return max(0.0, with_x - without_x)


def _duplicated(points: np.ndarray) -> np.ndarray:
    """Mask of rows that have an identical row elsewhere."""
    n = len(points)
    flags = np.zeros(n, dtype=bool)
    if n < 2:
        return flags
    order = np.lexsort(points.T[::-1])
    same_as_next = np.all(points[order[1:]] == points[order[:-1]], axis=1)
    flags[order[1:][same_as_next]] = True
    flags[order[:-1][same_as_next]] = True
    return flags


def _box_formula_2d(xs: np.ndarray, ys: np.ndarray, ref: Sequence[float]) -> np.ndarray:
    next_x = np.append(xs[1:], float(ref[0]))
    prev_y = np.insert(ys[:-1], 0, float(ref[1]))
    return (next_x - xs) * (prev_y - ys)


def all_contributions_2d(front: FrontLike, r: Sequence[float]) -> ContributionTable:
    """
    All two-objective contributions: each is the box between its sorted neighbours.

    Raises:
        DimensionMismatchError: If d != 2
    """
    front, ref = _inputs(front, r)
    if front.dim != 2:
        raise DimensionMismatchError(f"all_contributions_2d needs d=2, front has d={front.dim}")
    pts = front.points
    values = np.zeros(len(pts))
    inside = np.flatnonzero(clip_mask(pts, ref))
    if len(inside) == 0:
        return _table(values, 0.0)
    sub = pts[inside]
    kept = nondominated_indices(sub)
    order = kept[np.argsort(sub[kept, 0], kind="stable")]
    boxes = _box_formula_2d(sub[order, 0], sub[order, 1], ref)
    boxes[_duplicated(sub)[order]] = 0.0
    values[inside[order]] = boxes
    return _table(values, hv_array(sub, ref))


class _Region:
    """Exclusive 2D box of one staircase point and the points shadowing it."""

    __slots__ = ("x", "y", "top_x", "top_y", "inner", "since_z", "volumes")

    def __init__(self, x: float, y: float, top_x: float, top_y: float, z: float):
        self.x = x
        self.y = y
        self.top_x = top_x
        self.top_y = top_y
        self.inner = Staircase(top_x, top_y)
        self.since_z = z
        self.volumes: List[float] = []

    @property
    def area(self) -> float:
        return max(0.0, (self.top_x - self.x) * (self.top_y - self.y) - self.inner.area)

    def flush(self, z: float) -> None:
        if z > self.since_z:
            self.volumes.append(self.area * (z - self.since_z))
        self.since_z = z


class ContributionSweep3D:
    """
    z-sweep computing every three-objective contribution at once.

    Each point on the (x, y) staircase owns the box between its staircase
    neighbours and an inner staircase of the points only it dominates. Its
    contribution grows slice by slice and is finalised when a later point
    dominates its projection.
    """

    def __init__(self, ref: Sequence[float]):
        self.ref = tuple(float(c) for c in ref)
        self.stair = Staircase(self.ref[0], self.ref[1])
        self.active: Dict[int, _Region] = {}
        self.finished: Dict[int, float] = {}

    def add(self, index: int, x: float, y: float, z: float) -> None:
        stair = self.stair
        if x >= stair.ref_x or y >= stair.ref_y:
            return
        if stair.dominated(x, y):
            j = stair.rightmost_at_or_left(x)
            if j == 0 or stair[j - 1][1] > y:
                owner = self.active[stair[j][2]]
                owner.flush(z)
                owner.inner.insert(x, y)
            return

        _, removed = stair.insert(x, y, key=index)
        for _, _, key in removed:
            self._finalise(key, z)

        i = stair.rightmost_at_or_left(x)
        if i > 0:
            left = self.active[stair[i - 1][2]]
            left.flush(z)
            left.inner.clip_right(x)
            left.top_x = x
        if i + 1 < len(stair):
            right = self.active[stair[i + 1][2]]
            right.flush(z)
            right.inner.clip_top(y)
            right.top_y = y

        top_x = stair[i + 1][0] if i + 1 < len(stair) else self.ref[0]
        top_y = stair[i - 1][1] if i > 0 else self.ref[1]
        region = _Region(x, y, top_x, top_y, z)
        for rx, ry, _ in removed:
            region.inner.insert(rx, ry)
        self.active[index] = region

    def _finalise(self, key: int, z: float) -> None:
        region = self.active.pop(key)
        region.flush(z)
        self.finished[key] = math.fsum(region.volumes)

    def finish(self) -> Dict[int, float]:
        for key in list(self.active):
            self._finalise(key, self.ref[2])
        return self.finished


def all_contributions_3d(front: FrontLike, r: Sequence[float]) -> ContributionTable:
    """
    All three-objective contributions by one sweep in ascending z.

    Raises:
        DimensionMismatchError: If d != 3
    """
    front, ref = _inputs(front, r)
    if front.dim != 3:
        raise DimensionMismatchError(f"all_contributions_3d needs d=3, front has d={front.dim}")
    pts = front.points
    values = np.zeros(len(pts))
    inside = np.flatnonzero(clip_mask(pts, ref))
    if len(inside) == 0:
        return _table(values, 0.0)
    sub = pts[inside]
    sweep = ContributionSweep3D(ref)
    for i in np.lexsort((sub[:, 0], sub[:, 1], sub[:, 2])):
        sweep.add(int(i), *sub[i])
    for i, value in sweep.finish().items():
        values[inside[i]] = value
    return _table(values, hv_array(sub, ref))


def all_contributions(front: FrontLike, r: Sequence[float]) -> ContributionTable:
    """
    Contribution of every point of a front, H(S) - H(S minus p_i).

    Dispatches to the sweeps for d = 2, 3 and to one exclusive-volume
    computation per point otherwise.
    """
    front, ref = _inputs(front, r)
    if front.dim == 2:
        return all_contributions_2d(front, ref)
    if front.dim == 3:
        return all_contributions_3d(front, ref)
    pts = front.points
    values = np.zeros(len(pts))
    inside = clip_mask(pts, ref)
    for i in np.flatnonzero(inside):
        values[i] = exclusive_volume(pts[i], np.delete(pts, i, axis=0), ref)
    total = hv_array(pts[inside], ref) if inside.any() else 0.0
    return _table(values, total)


def least_contributor(front: FrontLike, r: Sequence[float]) -> Tuple[int, float]:
    """
    Index and value of the point with minimal contribution (lowest index on ties).

    Raises:
        EmptyFrontError: If the front has no points
    """
    front, ref = _inputs(front, r)
    if len(front) == 0:
        raise EmptyFrontError("least contributor of an empty front")
    table = all_contributions(front, ref)
    index = int(np.argmin(table.values))
    return index, float(table.values[index])


def _neighbour_update_2d(pts: np.ndarray, values: np.ndarray, touched: Sequence[int], ref: Sequence[float]) -> np.ndarray:
    """Recompute the box formula for the given rows of a clipped nondominated 2D set."""
    order = np.argsort(pts[:, 0], kind="stable")
    position = np.empty(len(pts), dtype=np.intp)
    position[order] = np.arange(len(pts))
    xs = pts[order, 0]
    ys = pts[order, 1]
    for i in touched:
        t = position[i]
        next_x = xs[t + 1] if t + 1 < len(xs) else float(ref[0])
        prev_y = ys[t - 1] if t > 0 else float(ref[1])
        values[i] = (next_x - xs[t]) * (prev_y - ys[t])
    return values


def _fast_2d(pts: np.ndarray, ref: Sequence[float]) -> bool:
    return pts.shape[1] == 2 and bool(np.all(clip_mask(pts, ref))) and is_nondominated(pts)


def update_all_contributions(
    front: FrontLike,
    r: Sequence[float],
    table: ContributionTable,
    p: Sequence[float],
    mode: Union[UpdateMode, str] = UpdateMode.INCREMENTAL,
) -> ContributionTable:
    """
    Update a contribution table after adding or removing one point.

    Incremental updates append the entry of p; decremental updates drop the
    entry of the first point equal to p. Other entries keep their order.

    Args:
        front: The set the table belongs to
        r: Reference point
        table: Contributions of the front
        p: Point to add or remove
        mode: INCREMENTAL or DECREMENTAL

    Raises:
        MembershipError: If p is already in the front (incremental) or absent (decremental)
    """
    mode = UpdateMode(mode)
    front, ref, p = _inputs(front, r, p)
    pts = front.points
    if len(table) != len(pts):
        raise ValueError(f"table has {len(table)} entries, front has {len(pts)} points")
    found = index_of(pts, p)
    p_arr = np.asarray(p)
    values = np.array(table.values, dtype=float)

    if mode == UpdateMode.INCREMENTAL:
        if found is not None:
            raise MembershipError(f"cannot add {p}: already in the front at index {found}")
        gained = exclusive_volume(p_arr, pts, ref)
        grown = np.vstack((pts, p_arr))
        if _fast_2d(grown, ref):
            neighbours = _sorted_neighbours(grown, len(pts))
            values = _neighbour_update_2d(grown, np.append(values, 0.0), neighbours + [len(pts)], ref)
            logger.debug("[update_contrib] mode=incremental path=2d touched=%s", len(neighbours))
            return _table(values, table.total_hv + gained)
        for i in range(len(pts)):
            if values[i] > 0.0:
                joined = np.maximum(pts[i], p_arr)
                values[i] -= exclusive_volume(joined, np.delete(pts, i, axis=0), ref)
        return _table(np.append(values, gained), table.total_hv + gained)

    if found is None:
        raise MembershipError(f"cannot remove {p}: not in the front")
    k = found
    rest = np.delete(pts, k, axis=0)
    values = np.delete(values, k)
    lost = exclusive_volume(p_arr, rest, ref)
    if _fast_2d(pts, ref):
        neighbours = [i if i < k else i - 1 for i in _sorted_neighbours(pts, k)]
        values = _neighbour_update_2d(rest, values, neighbours, ref)
        logger.debug("[update_contrib] mode=decremental path=2d touched=%s", len(neighbours))
        return _table(values, max(0.0, table.total_hv - lost))
    for i in range(len(rest)):
        joined = np.maximum(rest[i], p_arr)
        values[i] += exclusive_volume(joined, np.delete(rest, i, axis=0), ref)
    return _table(values, max(0.0, table.total_hv - lost))


def _sorted_neighbours(pts: np.ndarray, index: int) -> List[int]:
    """Rows immediately left and right of pts[index] in x order."""
    order = list(np.argsort(pts[:, 0], kind="stable"))
    t = order.index(index)
    neighbours = []
    if t > 0:
        neighbours.append(int(order[t - 1]))
    if t + 1 < len(order):
        neighbours.append(int(order[t + 1]))
    return neighbours


def exclusive_boxes(p: Sequence[float], accepted: np.ndarray, r: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Disjoint boxes tiling the region dominated by p and by no accepted point.

    Args:
        p: Point of dimension 2 or 3
        accepted: (m, d) array of accepted points
        r: Reference point

    Returns:
        Tuple of (lower corners, upper corners), each (b, d)

    Raises:
        DimensionMismatchError: If d is not 2 or 3
    """
    p = np.asarray(p, dtype=float)
    ref = np.asarray(r, dtype=float)
    d = len(p)
    if d not in (2, 3):
        raise DimensionMismatchError(f"exclusive boxes are available for d=2, 3, not d={d}")
    empty = (np.empty((0, d)), np.empty((0, d)))
    if not np.all(p < ref):
        return empty
    accepted = np.asarray(accepted, dtype=float).reshape(-1, d)
    joins = np.maximum(accepted, p) if len(accepted) else accepted
    stair = Staircase(ref[0], ref[1])
    lows: List[Tuple[float, ...]] = []
    highs: List[Tuple[float, ...]] = []

    if d == 2:
        for jx, jy in joins:
            stair.insert(jx, jy)
        for x0, x1, y0, y1 in stair.complement_boxes(p[0], p[1]):
            lows.append((x0, y0))
            highs.append((x1, y1))
    else:
        z_prev = p[2]
        for jx, jy, jz in joins[np.argsort(joins[:, 2], kind="stable")] if len(joins) else []:
            if jz >= ref[2]:
                break
            if jz > z_prev:
                for x0, x1, y0, y1 in stair.complement_boxes(p[0], p[1]):
                    lows.append((x0, y0, z_prev))
                    highs.append((x1, y1, jz))
                z_prev = jz
            stair.insert(jx, jy)
        for x0, x1, y0, y1 in stair.complement_boxes(p[0], p[1]):
            lows.append((x0, y0, z_prev))
            highs.append((x1, y1, ref[2]))

    if not lows:
        return empty
    return np.array(lows), np.array(highs)


def _overlap(lows: np.ndarray, highs: np.ndarray, points: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Volume of the union of disjoint boxes [lows, highs] inside [s, inf) for every row s."""
    out = np.zeros(len(points))
    if len(lows) == 0:
        return out
    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        sides = highs[None, :, :] - np.maximum(lows[None, :, :], block[:, None, :])
        out[start:start + chunk] = np.prod(np.clip(sides, 0.0, None), axis=2).sum(axis=1)
    return out


@dataclass(frozen=True)
class TwoSetContributionState:
    """
    Contributions of candidate points to a separate accepted set.

    Attributes:
        candidates: (n, d) candidate points, fixed for the lifetime of the state
        accepted: (m, d) accepted points in the order they were added
        contributions: H(s, accepted) for each candidate (0 when s is accepted)
        in_accepted: Candidates equal to some accepted point
        ref: Reference point
    """
    candidates: np.ndarray
    accepted: np.ndarray
    contributions: np.ndarray
    in_accepted: np.ndarray
    ref: Tuple[float, ...]

    @classmethod
    def initial(cls, front: FrontLike, r: Sequence[float]) -> "TwoSetContributionState":
        """State with nothing accepted; every contribution is the inclusive hypervolume."""
        front, ref = _inputs(front, r)
        pts = front.points
        sides = np.clip(np.asarray(ref) - pts, 0.0, None)
        contributions = np.prod(sides, axis=1) if len(pts) else np.zeros(0)
        return cls(
            candidates=pts,
            accepted=np.empty((0, front.dim)),
            contributions=contributions,
            in_accepted=np.zeros(len(pts), dtype=bool),
            ref=ref,
        )

    @property
    def dim(self) -> int:
        return int(self.candidates.shape[1])

    @property
    def accepted_hv(self) -> float:
        if len(self.accepted) == 0:
            return 0.0
        return hv_array(self.accepted[clip_mask(self.accepted, self.ref)], self.ref)


def update_all_contributions_2set(
    state: TwoSetContributionState,
    p: Sequence[float],
    mode: Union[UpdateMode, str] = UpdateMode.INCREMENTAL,
    require_nondominated: bool = False,
) -> TwoSetContributionState:
    """
    Move p into (incremental) or out of (decremental) the accepted set.

    For d = 2, 3 the exclusive region of p is tiled by disjoint boxes and every
    candidate's contribution changes by the volume of those boxes inside its own
    box. Other dimensions use one joint contribution per candidate.

    Args:
        state: Current state
        p: Point to add to or remove from the accepted set
        mode: INCREMENTAL or DECREMENTAL
        require_nondominated: Reject inputs whose candidates, accepted points and p are not mutually nondominated

    Returns:
        New state; the input state is left unchanged

    Raises:
        MembershipError: If p is already accepted (incremental) or not accepted (decremental)
        NondominanceError: If require_nondominated and the union is dominated
    """
    mode = UpdateMode(mode)
    p = make_point(p)
    if len(p) != state.dim:
        raise DimensionMismatchError(f"point has d={len(p)}, state has d={state.dim}")
    p_arr = np.asarray(p)
    ref = state.ref
    accepted = state.accepted
    found = index_of(accepted, p)

    if require_nondominated:
        union = np.vstack((state.candidates, accepted, p_arr))
        union = union[np.unique(union, axis=0, return_index=True)[1]]
        if not is_nondominated(union):
            raise NondominanceError("candidates, accepted points and p must be mutually nondominated")

    contributions = np.array(state.contributions, dtype=float)
    candidates = state.candidates
    in_accepted = np.array(state.in_accepted)

    if mode == UpdateMode.INCREMENTAL:
        if found is not None:
            raise MembershipError(f"{p} is already accepted")
        delta = _exclusive_overlap(p_arr, accepted, candidates, ref)
        contributions -= delta
        accepted = np.vstack((accepted, p_arr))
        if len(candidates):
            in_accepted |= equal_rows(candidates, p)
    else:
        if found is None:
            raise MembershipError(f"{p} is not accepted")
        accepted = np.delete(accepted, found, axis=0)
        delta = _exclusive_overlap(p_arr, accepted, candidates, ref)
        contributions += delta
        if len(candidates) and not (len(accepted) and np.any(equal_rows(accepted, p))):
            in_accepted &= ~equal_rows(candidates, p)

    contributions[in_accepted] = 0.0
    contributions = np.maximum(contributions, 0.0)
    return replace(state, accepted=accepted, contributions=contributions, in_accepted=in_accepted)


def _exclusive_overlap(p: np.ndarray, accepted: np.ndarray, candidates: np.ndarray, ref: Sequence[float]) -> np.ndarray:
    """H(p, s, accepted) for every candidate s not in accepted."""
    if len(candidates) == 0:
        return np.zeros(0)
    if len(p) in (2, 3):
        lows, highs = exclusive_boxes(p, accepted, ref)
        return _overlap(lows, highs, candidates)
    joined = np.maximum(candidates, p)
    return np.array([exclusive_volume(j, accepted, ref) for j in joined])
