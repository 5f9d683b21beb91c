import itertools
import logging
import math

import numpy as np
import pytest

from hvx.contributions import set_contribution
from hvx.errors import BudgetExceededError, DimensionMismatchError
from hvx.hypervolume import hv
from hvx.subset import (
    HsspMethod,
    approximation_report,
    complement_loss,
    default_gsemo_iterations,
    hssp,
    hssp_exact_2d,
    hssp_exhaustive,
    hssp_greedy_decremental,
    hssp_greedy_incremental,
    hssp_gsemo,
    hssp_local_search,
    tighter_greedy_bound,
)

from .helpers import SUBSET_FRONT_2D, SUBSET_REF_2D, integer_points, random_front


def enumerate_optimum(pts, ref, k):
    best = 0.0
    for combo in itertools.combinations(range(len(pts)), k):
        if combo:
            best = max(best, hv(pts[list(combo)], ref).value)
    return best


class TestExact2D:
    @pytest.mark.parametrize("k,selected,value", [(0, [], 0.0), (1, [1], 9.0), (2, [0, 1], 10.0), (3, [0, 1, 2], 11.0)])
    def test_small_front(self, k, selected, value):
        solution = hssp_exact_2d(SUBSET_FRONT_2D, SUBSET_REF_2D, k)
        assert solution.selected == selected
        assert solution.hypervolume == pytest.approx(value)
        assert solution.method == HsspMethod.EXACT_2D

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_enumeration(self, seed):
        rng = np.random.default_rng([seed, 4])
        pts = integer_points(rng, 9, 2)
        ref = (5.0, 5.0)
        for k in range(len(pts) + 1):
            assert hssp_exact_2d(pts, ref, k).hypervolume == pytest.approx(enumerate_optimum(pts, ref, k), rel=1e-12, abs=1e-12)

    def test_evenly_spread_selection_on_linear_front(self):
        pts = np.array([(i, 511 - i) for i in range(512)], dtype=float)
        solution = hssp_exact_2d(pts, (600.0, 600.0), 10, trace=False)
        xs = pts[solution.selected, 0]
        gaps = np.diff(xs)
        assert len(solution.selected) == 10
        assert gaps.max() - gaps.min() <= 1

    def test_needs_two_objectives(self, front3d, ref3d):
        with pytest.raises(DimensionMismatchError):
            hssp_exact_2d(front3d, ref3d, 2)

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            hssp_exact_2d(SUBSET_FRONT_2D, SUBSET_REF_2D, 4)
        with pytest.raises(ValueError):
            hssp_exact_2d(SUBSET_FRONT_2D, SUBSET_REF_2D, -1)


class TestExhaustive:
    def test_lexicographic_tie_break(self):
        solution = hssp_exhaustive(SUBSET_FRONT_2D, SUBSET_REF_2D, 2)
        assert solution.selected == [0, 1]
        assert solution.hypervolume == pytest.approx(10.0)

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as info:
            hssp_exhaustive(np.arange(40.0).reshape(20, 2), (50, 50), 10, budget=1000)
        assert info.value.required == math.comb(20, 10)
        assert info.value.budget == 1000


class TestGreedy:
    def test_incremental_on_small_front(self):
        solution = hssp_greedy_incremental(SUBSET_FRONT_2D, SUBSET_REF_2D, 2, trace=True)
        assert solution.selected == [0, 1]
        assert solution.hypervolume == pytest.approx(10.0)
        assert [step.action for step in solution.trace.steps] == ["add", "add"]
        assert solution.trace.hypervolumes() == pytest.approx([9.0, 10.0])

    def test_decremental_on_small_front(self):
        solution = hssp_greedy_decremental(SUBSET_FRONT_2D, SUBSET_REF_2D, 2)
        assert solution.hypervolume == pytest.approx(10.0)
        assert len(solution.selected) == 2

    def test_trace_can_be_disabled(self):
        assert hssp_greedy_incremental(SUBSET_FRONT_2D, SUBSET_REF_2D, 2, trace=False).trace is None

    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("seed", range(6))
    def test_guarantees_against_enumeration(self, d, seed):
        rng = np.random.default_rng([seed, d, 5])
        pts = integer_points(rng, 8, d)
        ref = (5.0,) * d
        n = len(pts)
        for k in range(1, n + 1):
            optimum = enumerate_optimum(pts, ref, k)
            inc = hssp_greedy_incremental(pts, ref, k, trace=False).hypervolume
            dec = hssp_greedy_decremental(pts, ref, k, trace=False).hypervolume
            assert inc >= (1 - 1 / math.e) * optimum - 1e-12
            assert dec >= (k / n) * optimum - 1e-12
            assert inc <= optimum + 1e-9 and dec <= optimum + 1e-9

    def test_incremental_prefixes_are_greedy_solutions(self, rng):
        pts = random_front(rng, 12, 3)
        ref = (5.0,) * 3
        full = hssp_greedy_incremental(pts, ref, len(pts) // 2, trace=True)
        for size in range(1, len(pts) // 2 + 1):
            prefix = hssp_greedy_incremental(pts, ref, size, trace=False)
            assert prefix.hypervolume == pytest.approx(full.trace.hypervolumes()[size - 1], rel=1e-9)


class TestStochastic:
    def test_local_search_is_seeded(self, rng):
        pts = rng.dirichlet(np.ones(3), size=15)
        ref = (2.0,) * 3
        a = hssp_local_search(pts, ref, 4, max_iters=200, seed=7)
        b = hssp_local_search(pts, ref, 4, max_iters=200, seed=7)
        assert a.selected == b.selected
        assert len(a.selected) == 4

    def test_local_search_never_gets_worse(self, rng):
        pts = rng.dirichlet(np.ones(2), size=15)
        ref = (2.0, 2.0)
        solution = hssp_local_search(pts, ref, 3, swaps_per_move=2, max_iters=300, seed=1, trace=True)
        values = solution.trace.hypervolumes()
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_local_search_trace_keeps_only_improvements(self):
        pts = np.array([(i, 9 - i) for i in range(10)], dtype=float)
        solution = hssp_local_search(pts, (10.0, 10.0), 3, max_iters=5000, seed=0, trace=True)
        steps = solution.trace.steps
        accepted = sum(step.action == "accept" for step in steps)
        assert steps[0].action == "start"
        assert steps[-1].action == "finish"
        assert len(steps) == accepted + 2
        assert accepted < math.comb(10, 3)
        assert steps[-1].metrics == {"iterations": 5000, "rejected": 5000 - accepted}

    def test_local_search_validates_options(self):
        with pytest.raises(ValueError):
            hssp_local_search(SUBSET_FRONT_2D, SUBSET_REF_2D, 1, swaps_per_move=0)
        with pytest.raises(ValueError):
            hssp_local_search(SUBSET_FRONT_2D, SUBSET_REF_2D, 1, max_iters=-1)

    def test_gsemo_iteration_budget(self):
        assert default_gsemo_iterations(10, 5) == 100 * (math.ceil(math.log(10)) + 5)
        assert default_gsemo_iterations(0, 0) == 0

    def test_gsemo_finds_optimum_on_small_front(self):
        solution = hssp_gsemo(SUBSET_FRONT_2D, SUBSET_REF_2D, 2, max_iters=2000, seed=3)
        assert solution.hypervolume == pytest.approx(10.0)
        assert len(solution.selected) <= 2

    def test_gsemo_empty_front(self):
        assert hssp_gsemo([], (1, 1), 0).selected == []

    @pytest.mark.slow
    def test_gsemo_reaches_greedy_bound_in_most_runs(self):
        rng = np.random.default_rng(99)
        pts = random_front(rng, 10, 3)
        ref = (5.0,) * 3
        n, k = len(pts), min(5, len(pts))
        optimum = hssp_exhaustive(pts, ref, k, trace=False).hypervolume
        good = sum(
            hssp_gsemo(pts, ref, k, seed=seed, trace=False).hypervolume >= (1 - 1 / math.e) * optimum
            for seed in range(100)
        )
        assert good >= 95


class TestDispatchAndReport:
    @pytest.mark.parametrize("method", [m.value for m in HsspMethod])
    def test_dispatch(self, method):
        solution = hssp(SUBSET_FRONT_2D, SUBSET_REF_2D, 2, method, trace=False)
        assert solution.method == HsspMethod(method)
        assert solution.hypervolume <= 10.0 + 1e-12

    def test_solution_to_dict(self):
        data = hssp(SUBSET_FRONT_2D, SUBSET_REF_2D, 1, "greedy-inc", trace=True).to_dict()
        assert data["selected"] == [1]
        assert data["method"] == "greedy-inc"
        assert data["trace"]["steps"][0]["action"] == "add"

    def test_tighter_bound(self):
        assert tighter_greedy_bound(10, 3) == pytest.approx(1 - (2 / 3) ** 3)
        assert tighter_greedy_bound(4, 4) == pytest.approx(1.0)
        assert tighter_greedy_bound(10, 3) > 1 - 1 / math.e

    @pytest.mark.parametrize("seed", range(4))
    def test_best_subset_leaves_the_cheapest_complement(self, seed):
        rng = np.random.default_rng(seed)
        pts = random_front(rng, 7, 3)
        ref = (5.0,) * 3
        n = len(pts)
        for k in range(1, n):
            best = hssp_exhaustive(pts, ref, k, trace=False)
            losses = {
                dropped: set_contribution(pts[list(dropped)], pts, ref)
                for dropped in itertools.combinations(range(n), n - k)
            }
            cheapest = min(losses.values())
            complement = tuple(i for i in range(n) if i not in best.selected)
            assert losses[complement] == pytest.approx(cheapest, rel=1e-9, abs=1e-12)
            assert complement_loss(pts, ref, best.selected) == pytest.approx(cheapest, rel=1e-9, abs=1e-12)


    def test_approximation_report(self, caplog):
        with caplog.at_level(logging.INFO, logger="hvx.subset"):
            report = approximation_report(SUBSET_FRONT_2D, SUBSET_REF_2D, 2)
        assert report.passed
        assert report.optimum == pytest.approx(10.0)
        assert report.ratios["exact2d"] == pytest.approx(1.0)
        assert set(report.ratios) == {"exact2d", "greedy-inc", "greedy-dec", "ls", "gsemo"}
        assert "tighter_greedy_bound" in caplog.text
        assert report.to_dict()["passed"] is True
