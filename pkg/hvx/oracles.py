"""
Slow reference computations of the hypervolume.

Each oracle is written independently of the fast algorithms in
hvx.hypervolume (no shared kernels) so that agreement between them is
meaningful. Only the input validation in hvx.geometry is shared.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .config import load_settings
from .errors import BudgetExceededError
from .geometry import Front, check_reference, clip_mask, equal_rows, make_front, make_point

logger = logging.getLogger(__name__)

# Stamped on every regression constant derived from these oracles.
ORACLE_VERSION = "1"

FrontLike = Union[Front, np.ndarray, Sequence[Sequence[float]]]


def _clipped(front: FrontLike, r: Sequence[float]):
    ref = make_point(r)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(ref))
    front = make_front(front)
    ref = check_reference(ref, front.dim)
    pts = front.points
    return pts[clip_mask(pts, ref)], np.asarray(ref, dtype=float)


def hv_inclusion_exclusion(front: FrontLike, r: Sequence[float], max_points: Optional[int] = None) -> float:
    """
    Sum of signed box volumes over every nonempty subset.

    Raises:
        BudgetExceededError: If the front has more than max_points points
    """
    pts, ref = _clipped(front, r)
    limit = load_settings().ie_max_points if max_points is None else max_points
    if len(pts) > limit:
        raise BudgetExceededError(
            f"inclusion-exclusion needs 2^{len(pts)} terms, limit is {limit} points",
            required=len(pts),
            budget=limit,
        )
    if len(pts) == 0:
        return 0.0
    joins = np.full((1, pts.shape[1]), -np.inf)
    signs = np.array([-1.0])
    for p in pts:
        joins = np.vstack((joins, np.maximum(joins, p)))
        signs = np.concatenate((signs, -signs))
    volumes = np.prod(np.clip(ref - joins[1:], 0.0, None), axis=1)
    return math.fsum(signs[1:] * volumes)


def hv_grid(front: FrontLike, r: Sequence[float], budget: Optional[int] = None) -> float:
    """
    Exact volume by coordinate compression.

    Every cell of the grid spanned by the distinct point coordinates (plus r) is
    marked covered when its lower corner is weakly dominated by a point.

    Raises:
        BudgetExceededError: If the grid has more cells than the budget
    """
    pts, ref = _clipped(front, r)
    if len(pts) == 0:
        return 0.0
    limit = load_settings().grid_budget if budget is None else budget
    axes = [np.unique(np.append(pts[:, j], ref[j])) for j in range(pts.shape[1])]
    required = math.prod(len(a) for a in axes)
    if required > limit:
        raise BudgetExceededError(f"grid needs {required} cells, budget is {limit}", required=required, budget=limit)

    widths = [np.diff(a) for a in axes]
    covered = np.zeros(tuple(len(w) for w in widths), dtype=bool)
    for p in pts:
        corner = tuple(slice(int(np.searchsorted(a, c)), None) for a, c in zip(axes, p))
        covered[corner] = True

    volume: Any = covered.astype(float)
    for w in widths:
        volume = np.tensordot(w, volume, axes=([0], [0]))
    return float(volume)


def _hso_2d(pts: np.ndarray, ref: np.ndarray) -> float:
    order = np.argsort(pts[:, 0], kind="stable")
    xs = pts[order, 0]
    lowest = np.minimum.accumulate(pts[order, 1])
    right = np.append(xs[1:], ref[0])
    return math.fsum((right - xs) * (ref[1] - lowest))


def _hso(pts: np.ndarray, ref: np.ndarray) -> float:
    if len(pts) == 0:
        return 0.0
    if pts.shape[1] == 2:
        return _hso_2d(pts, ref)
    order = np.argsort(pts[:, -1], kind="stable")
    levels = pts[order, -1]
    slices: List[float] = []
    for i in range(len(pts)):
        upper = levels[i + 1] if i + 1 < len(pts) else ref[-1]
        height = upper - levels[i]
        if height > 0.0:
            slices.append(height * _hso(pts[order[: i + 1], :-1], ref[:-1]))
    return math.fsum(slices)


def hv_hso(front: FrontLike, r: Sequence[float]) -> float:
    """Plain slicing recursion over the last objective, no bounding and no caching."""
    pts, ref = _clipped(front, r)
    return _hso(pts, ref)


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    half_width_95: float
    samples: int
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "estimate": self.estimate,
            "half_width_95": self.half_width_95,
            "samples": self.samples,
            "seed": self.seed,
        }


def hv_monte_carlo(front: FrontLike, r: Sequence[float], samples: int, seed: int = 0, chunk_cells: int = 2_000_000) -> McEstimate:
    """
    Monte Carlo estimate over the box between the componentwise minimum of the front and r.

    Uses a Philox counter-based generator so each seed gives an independent,
    reproducible stream.

    Raises:
        ValueError: If samples < 1
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    pts, ref = _clipped(front, r)
    if len(pts) == 0:
        return McEstimate(0.0, 0.0, samples, seed)
    low = pts.min(axis=0)
    box = float(np.prod(ref - low))
    if box <= 0.0:
        return McEstimate(0.0, 0.0, samples, seed)

    rng = np.random.Generator(np.random.Philox(seed))
    step = max(1, chunk_cells // (len(pts) * pts.shape[1]))
    hits = 0
    drawn = 0
    while drawn < samples:
        size = min(step, samples - drawn)
        u = rng.uniform(low, ref, size=(size, pts.shape[1]))
        hits += int(np.any(np.all(pts[None, :, :] <= u[:, None, :], axis=2), axis=1).sum())
        drawn += size

    fraction = hits / samples
    half_width = 1.96 * math.sqrt(fraction * (1.0 - fraction) / samples) * box
    logger.debug("[mc] samples=%s hits=%s seed=%s", samples, hits, seed)
    return McEstimate(fraction * box, half_width, samples, seed)


def contribution_oracle(p: Sequence[float], front: FrontLike, r: Sequence[float], budget: Optional[int] = None) -> float:
    """H(S u {p}) - H(S minus {p}) through the grid oracle."""
    p = make_point(p)
    ref = make_point(r)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(ref))
    front = make_front(front, dim=len(p))
    pts = front.points
    rest = pts[~equal_rows(pts, p)] if len(pts) else pts
    with_p = np.vstack((rest, np.asarray(p)))
    return hv_grid(with_p, ref, budget) - hv_grid(rest, ref, budget)
