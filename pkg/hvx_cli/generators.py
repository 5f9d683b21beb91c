"""
Seeded instance generators for nondominated fronts.
"""

import logging
from enum import Enum
from typing import Union

import numpy as np

from hvx.geometry import nondominated_indices

from .errors import GenerationError

logger = logging.getLogger(__name__)

MAX_RETRIES = 12


class FrontKind(str, Enum):
    LINEAR = "linear"
    SPHERICAL = "spherical"
    RANDOM = "random"


def linear_front(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Points on the slice sum(x) = 1 of the positive orthant."""
    pts = rng.dirichlet(np.ones(d), size=n)
    pts[:, -1] = 1.0 - pts[:, :-1].sum(axis=1)
    return np.clip(pts, 0.0, None)


def spherical_front(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Points on the positive octant of the unit sphere (a concave front)."""
    pts = np.abs(rng.standard_normal((n, d)))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def random_front(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """
    Nondominated subset of uniform points in [0, 1]^d, resampled with doubling
    sizes until n points survive.

    Raises:
        GenerationError: If MAX_RETRIES samples are not enough
    """
    size = max(n, 1)
    for attempt in range(MAX_RETRIES):
        sample = rng.random((size, d))
        kept = nondominated_indices(sample)
        logger.debug("[gen] kind=random attempt=%s sample=%s survivors=%s", attempt + 1, size, len(kept))
        if len(kept) >= n:
            return sample[kept[:n]]
        size *= 2
    raise GenerationError(f"could not draw {n} nondominated points in d={d} after {MAX_RETRIES} attempts")


def generate(kind: Union[FrontKind, str], n: int, d: int, seed: int = 0) -> np.ndarray:
    """
    Generate a nondominated (n, d) front.

    Raises:
        ValueError: If n < 0 or d < 2
        GenerationError: If the kind cannot produce n nondominated points
    """
    kind = FrontKind(kind)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    rng = np.random.default_rng(seed)
    if n == 0:
        return np.empty((0, d))
    if kind == FrontKind.RANDOM:
        return random_front(n, d, rng)
    pts = linear_front(n, d, rng) if kind == FrontKind.LINEAR else spherical_front(n, d, rng)
    kept = nondominated_indices(pts)
    if len(kept) < n:
        raise GenerationError(f"{kind.value} sample of {n} points kept only {len(kept)} after filtering")
    return pts
