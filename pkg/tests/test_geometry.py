import logging

import numpy as np
import pytest
from hypothesis import given

from hvx.errors import DimensionMismatchError, InvalidPointError, PolicyViolationError
from hvx.geometry import (
    ClipPolicy,
    Front,
    NondominanceFlag,
    bound_and_filter,
    box_volume,
    certify,
    dominance_matrix,
    index_of,
    join,
    make_front,
    make_point,
    nondominated_filter,
    nondominated_indices,
    project_drop_last,
    strictly_dominates,
    strongly_dominates,
    validate_front,
    weakly_dominates,
)
from hvx.hypervolume import hv

from .helpers import SAMPLE_FRONT_3D, SAMPLE_REF_3D, point, point_lists


class TestPoints:
    def test_make_point_rejects_non_finite(self):
        with pytest.raises(InvalidPointError):
            make_point((1.0, float("nan")))
        with pytest.raises(InvalidPointError):
            make_point((1.0, float("inf")))

    def test_make_point_rejects_single_objective(self):
        with pytest.raises(InvalidPointError):
            make_point((1.0,))

    def test_make_front_is_read_only(self):
        front = make_front([(1, 2), (2, 1)])
        assert isinstance(front, Front)
        assert front.dim == 2 and len(front) == 2
        with pytest.raises(ValueError):
            front.points[0, 0] = 5.0

    def test_empty_front_needs_dimension(self):
        with pytest.raises(InvalidPointError):
            make_front([])
        assert make_front([], dim=3).dim == 3

    def test_ragged_front_is_rejected(self):
        with pytest.raises((InvalidPointError, ValueError)):
            make_front([(1, 2), (1, 2, 3)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            make_front([(1, 2)], dim=3)

    def test_subset_keeps_order_and_certificate(self):
        front = nondominated_filter([(1, 3), (2, 2), (3, 1)])
        sub = front.subset([2, 0])
        assert sub.to_list() == [[3.0, 1.0], [1.0, 3.0]]
        assert sub.nondominated == NondominanceFlag.VERIFIED


class TestDominance:
    def test_relations_on_known_pairs(self):
        assert weakly_dominates((1, 2), (1, 2))
        assert not strictly_dominates((1, 2), (1, 2))
        assert strictly_dominates((1, 2), (1, 3))
        assert not strongly_dominates((1, 2), (1, 3))
        assert strongly_dominates((0, 1), (1, 3))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            weakly_dominates((1, 2), (1, 2, 3))

    @given(point(3), point(3))
    def test_strong_implies_strict_implies_weak(self, p, q):
        if strongly_dominates(p, q):
            assert strictly_dominates(p, q)
        if strictly_dominates(p, q):
            assert weakly_dominates(p, q)
            assert not weakly_dominates(q, p)

    @given(point(3), point(3))
    def test_weak_dominance_both_ways_means_equal(self, p, q):
        if weakly_dominates(p, q) and weakly_dominates(q, p):
            assert tuple(p) == tuple(q)

    @given(point(3), point(3), point(3))
    def test_weak_dominance_is_transitive(self, p, q, s):
        if weakly_dominates(p, q) and weakly_dominates(q, s):
            assert weakly_dominates(p, s)

    @given(point(3), point(3))
    def test_join_is_least_upper_bound(self, p, q):
        j = join(p, q)
        assert weakly_dominates(p, j) and weakly_dominates(q, j)
        assert join(p, q) == join(q, p)
        assert join(p, p) == tuple(float(c) for c in p)

    @given(point(3), point(3), point(3))
    def test_join_is_associative(self, p, q, s):
        assert join(join(p, q), s) == join(p, join(q, s))

    def test_dominance_matrix(self):
        table = dominance_matrix(np.array([(1, 1), (2, 2), (0, 3)]))
        assert table.tolist() == [[True, True, False], [False, True, False], [False, False, True]]


class TestFilter:
    def test_keeps_first_duplicate(self):
        kept = nondominated_indices(np.array([(2, 2), (1, 3), (2, 2), (3, 3)]))
        assert kept.tolist() == [0, 1]

    @given(point_lists(3, max_size=10))
    def test_filter_result_is_nondominated_and_preserves_hv(self, pts):
        ref = (9.0, 9.0, 9.0)
        filtered = nondominated_filter(make_front(pts, dim=3) if pts else make_front([], dim=3))
        assert filtered.nondominated == NondominanceFlag.VERIFIED
        rows = filtered.to_list()
        for i, p in enumerate(rows):
            for j, q in enumerate(rows):
                if i != j:
                    assert not weakly_dominates(p, q)
        before = hv(pts, ref).value if pts else 0.0
        after = hv(filtered, ref).value
        assert after == pytest.approx(before, rel=1e-12, abs=1e-12)

    def test_certify(self):
        assert certify(make_front([(1, 2), (2, 1)])).nondominated == NondominanceFlag.VERIFIED
        assert certify(make_front([(1, 1), (2, 2)])).nondominated == NondominanceFlag.VIOLATED

    def test_index_of_uses_value_equality(self):
        front = make_front([(1, 2), (2, 1), (2, 1)])
        assert index_of(front, (2.0, 1.0)) == 1
        assert index_of(front.points, (1, 2)) == 0
        assert index_of(front, (2.0, 2.0)) is None


class TestProjection:
    def test_drops_last_objective(self):
        assert project_drop_last((1.0, 2.0, 3.0)) == (1.0, 2.0)
        projected = project_drop_last(make_front(SAMPLE_FRONT_3D, nondominated=NondominanceFlag.VERIFIED))
        assert projected.dim == 2
        assert projected.nondominated == NondominanceFlag.UNKNOWN

    def test_refuses_two_objectives(self):
        with pytest.raises(DimensionMismatchError):
            project_drop_last((1.0, 2.0))
        with pytest.raises(DimensionMismatchError):
            project_drop_last(make_front([(1, 2)]))


class TestBoundAndFilter:
    def test_sample_front_first_point(self, front3d):
        delimiters = bound_and_filter(front3d[0], front3d)
        joined = sorted(map(tuple, delimiters.joined_points.tolist()))
        assert joined == [(5.0, 5.0, 6.0), (5.0, 7.0, 4.0), (7.0, 5.0, 2.0)]
        assert hv(delimiters.joined_points, SAMPLE_REF_3D).value == pytest.approx(172.0)
        assert box_volume(front3d[0], SAMPLE_REF_3D) == 225.0
        assert delimiters.inner == []
        assert delimiters.outer == [1, 2, 4]

    def test_inner_and_outer_delimiters(self):
        delimiters = bound_and_filter((2, 2), [(1, 3), (3, 1), (2, 3)])
        assert sorted(map(tuple, delimiters.joined_points.tolist())) == [(2.0, 3.0), (3.0, 2.0)]
        assert delimiters.inner == [2]
        assert delimiters.outer == [0, 1]
        assert delimiters.delimiters == [0, 1, 2]

    def test_points_dominated_by_p_are_inner(self):
        delimiters = bound_and_filter((0, 0), [(1, 3), (3, 1)])
        assert delimiters.inner == [0, 1]
        assert delimiters.outer == []

    def test_point_equal_to_p_is_ignored(self):
        delimiters = bound_and_filter((2, 2), [(2, 2), (1, 3)])
        assert delimiters.delimiters == [1]

    def test_empty_front(self):
        delimiters = bound_and_filter((1, 1), make_front([], dim=2))
        assert delimiters.delimiters == []
        assert delimiters.joined_points.shape == (0, 2)


class TestValidate:
    def test_clip_drops_points_outside_box_and_logs(self, caplog):
        with caplog.at_level(logging.WARNING, logger="hvx.geometry"):
            front = validate_front([(1, 1), (5, 1), (2, 0)], (4, 4))
        assert front.to_list() == [[1.0, 1.0], [2.0, 0.0]]
        assert "dropped=1" in caplog.text

    def test_clip_keeps_boundary_points(self):
        assert len(validate_front([(4, 1), (1, 4)], (4, 4))) == 2

    def test_strict_names_first_offender(self):
        with pytest.raises(PolicyViolationError) as info:
            validate_front([(1, 1), (4, 1), (5, 5)], (4, 4), policy=ClipPolicy.STRICT)
        assert info.value.index == 1

    def test_reference_dimension_checked(self):
        with pytest.raises(DimensionMismatchError):
            validate_front([(1, 1)], (4, 4, 4))

    def test_box_volume(self):
        assert box_volume((1, 2), (4, 4)) == 6.0
        assert box_volume((4, 2), (4, 4)) == 0.0
        assert box_volume((5, 2), (4, 4)) == 0.0
