"""
Regression constants and instance helpers shared by the test modules.

Constants were derived with the oracles of ORACLE_VERSION "1".
"""

import numpy as np
from hypothesis import strategies as st

from hvx.geometry import nondominated_indices

ORACLE_CONSTANTS_VERSION = "1"

# Three-objective front: hypervolume 425 for r = (10, 10, 10).
SAMPLE_FRONT_3D = [(5, 5, 1), (7, 3, 2), (1, 7, 4), (8, 1, 5), (4, 2, 6), (2, 4, 8)]
SAMPLE_REF_3D = (10.0, 10.0, 10.0)
SAMPLE_HV_3D = 425.0
SAMPLE_CONTRIBUTIONS_3D = (53.0, 20.0, 48.0, 12.0, 38.0, 12.0)

STAIRCASE_2D = [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)]
STAIRCASE_REF_2D = (4.0, 4.0)

SUBSET_FRONT_2D = [(1.0, 4.0), (2.0, 2.0), (4.0, 1.0)]
SUBSET_REF_2D = (5.0, 5.0)


def random_front(rng: np.random.Generator, n: int, d: int, high: float = 5.0) -> np.ndarray:
    """Up to n continuous nondominated points in [0, high)^d."""
    pts = rng.uniform(0.0, high, size=(4 * n + 4, d))
    return pts[nondominated_indices(pts)][:n]


def integer_points(rng: np.random.Generator, n: int, d: int, high: int = 7) -> np.ndarray:
    """Points on a small integer grid, with ties and duplicates."""
    return rng.integers(0, high, size=(n, d)).astype(float)


coordinates = st.integers(min_value=0, max_value=8).map(float)


def point(d: int):
    return st.tuples(*[coordinates] * d)


def point_lists(d: int, min_size: int = 0, max_size: int = 8):
    return st.lists(point(d), min_size=min_size, max_size=max_size)
