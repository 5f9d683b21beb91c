import numpy as np
import pytest

from hvx.staircase import Staircase

from .helpers import random_front


def test_insert_returns_gain_and_removed_points():
    stair = Staircase(4.0, 4.0)
    assert stair.insert(1, 3, key="a") == (3.0, [])
    assert stair.insert(3, 1, key="b") == (2.0, [])
    gain, removed = stair.insert(0.5, 0.5, key="c")
    assert removed == [(1.0, 3.0, "a"), (3.0, 1.0, "b")]
    assert stair.area == pytest.approx(12.25)
    assert gain == pytest.approx(12.25 - 5.0)
    assert stair.points() == [(0.5, 0.5)]


def test_dominated_and_outside_points_gain_nothing():
    stair = Staircase(4.0, 4.0)
    stair.insert(1, 1)
    assert stair.insert(2, 2) == (0.0, [])
    assert stair.insert(1, 1) == (0.0, [])
    assert stair.insert(5, 0) == (0.0, [])
    assert len(stair) == 1


def test_equal_x_keeps_lower_point():
    stair = Staircase(4.0, 4.0)
    stair.insert(1, 3)
    gain, removed = stair.insert(1, 2)
    assert gain == pytest.approx(3.0)
    assert removed == [(1.0, 3.0, None)]


def test_area_matches_recomputation(rng):
    pts = rng.uniform(0, 10, size=(200, 2))
    stair = Staircase(10.0, 10.0)
    for x, y in pts:
        stair.insert(x, y)
        assert stair.area == pytest.approx(stair.covered_area(), rel=1e-9)
    pts = np.array(stair.points())
    assert all(np.diff(pts[:, 0]) > 0)
    assert all(np.diff(pts[:, 1]) < 0)


@pytest.mark.parametrize("edge", [0.5, 1.0, 2.5, 3.0, 3.9])
def test_clip_right(edge):
    stair = Staircase(4.0, 4.0)
    for x, y in [(1, 3), (2, 2), (3, 1)]:
        stair.insert(x, y)
    lost = stair.clip_right(edge)
    assert stair.ref_x == edge
    assert stair.area == pytest.approx(stair.covered_area())
    assert lost == pytest.approx(6.0 - stair.area)


@pytest.mark.parametrize("edge", [0.5, 1.0, 1.5, 3.0, 3.9])
def test_clip_top(edge):
    stair = Staircase(4.0, 4.0)
    for x, y in [(1, 3), (2, 2), (3, 1)]:
        stair.insert(x, y)
    lost = stair.clip_top(edge)
    assert stair.ref_y == edge
    assert stair.area == pytest.approx(stair.covered_area())
    assert lost == pytest.approx(6.0 - stair.area)


def test_complement_boxes_tile_the_uncovered_region(rng):
    pts = random_front(rng, 8, 2, high=4.0) + 1.0
    stair = Staircase(6.0, 6.0)
    for x, y in pts:
        stair.insert(x, y)
    boxes = stair.complement_boxes(1.0, 1.0)
    uncovered = sum((x1 - x0) * (y1 - y0) for x0, x1, y0, y1 in boxes)
    assert uncovered + stair.area == pytest.approx(25.0)
    for x0, x1, y0, y1 in boxes:
        assert x1 > x0 and y1 > y0


def test_entries_keep_their_keys_in_x_order():
    stair = Staircase(4.0, 4.0)
    stair.insert(3, 1, key="c")
    stair.insert(1, 3, key="a")
    stair.insert(2, 2, key="b")
    assert [key for _, _, key in stair] == ["a", "b", "c"]
    assert stair[1] == (2.0, 2.0, "b")
    assert stair.rightmost_at_or_left(2.5) == 1
    assert stair.rightmost_at_or_left(0.5) == -1


def test_insertion_order_does_not_change_the_area():
    n = 500
    xs = np.linspace(0.0, 1.0, n, endpoint=False)
    ascending = Staircase(1.0, 1.0)
    descending = Staircase(1.0, 1.0)
    for x in xs:
        ascending.insert(x, 1.0 - x - 1.0 / n)
    for x in xs[::-1]:
        descending.insert(x, 1.0 - x - 1.0 / n)
    assert len(ascending) == len(descending) == n
    assert descending.area == pytest.approx(ascending.area, rel=1e-12)
    assert descending.area == pytest.approx(descending.covered_area(), rel=1e-9)
