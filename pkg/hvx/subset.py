"""
Hypervolume subset selection: choose at most k points of a front maximising
the hypervolume.

Solvers: exact dynamic programming for two objectives, exhaustive enumeration,
greedy incremental and decremental selection, local search and GSEMO. Ties are
broken towards the lexicographically smallest index set.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import load_settings
from .contributions import (
    TwoSetContributionState,
    all_contributions,
    update_all_contributions,
    update_all_contributions_2set,
)
from .errors import BudgetExceededError, DimensionMismatchError
from .geometry import Front, check_reference, clip_mask, equal_rows, make_front, make_point, nondominated_indices
from .hypervolume import FrontLike, UpdateMode, hv, hv_array
from .trace import SolverTrace

logger = logging.getLogger(__name__)


class HsspMethod(str, Enum):
    EXACT_2D = "exact2d"
    EXHAUSTIVE = "exhaustive"
    GREEDY_INC = "greedy-inc"
    GREEDY_DEC = "greedy-dec"
    LOCAL_SEARCH = "ls"
    GSEMO = "gsemo"


@dataclass(frozen=True)
class HsspSolution:
    """
    Attributes:
        selected: Sorted indices into the input front
        hypervolume: Hypervolume of the selected points, recomputed from scratch
        method: Solver that produced the subset
        trace: Per-step record, when tracing was enabled
    """
    selected: List[int]
    hypervolume: float
    method: HsspMethod
    trace: Optional[SolverTrace] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "selected": list(self.selected),
            "hypervolume": self.hypervolume,
            "method": self.method.value,
            "trace": self.trace.to_dict() if self.trace is not None else None,
        }


def _inputs(front: FrontLike, r: Sequence[float], k: int) -> Tuple[Front, Tuple[float, ...]]:
    ref = make_point(r)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(ref))
    front = make_front(front)
    ref = check_reference(ref, front.dim)
    if not 0 <= k <= len(front):
        raise ValueError(f"k must be between 0 and {len(front)}, got {k}")
    return front, ref


def _subset_hv(pts: np.ndarray, ref: Sequence[float]) -> float:
    if len(pts) == 0:
        return 0.0
    return hv_array(pts[clip_mask(pts, ref)], ref)


def _solution(front: Front, ref: Sequence[float], selected: Sequence[int], method: HsspMethod, trace: Optional[SolverTrace]) -> HsspSolution:
    chosen = sorted(int(i) for i in selected)
    value = hv(front.points[chosen], ref).value if chosen else 0.0
    logger.debug("[hssp] method=%s k=%s hv=%s", method.value, len(chosen), value)
    return HsspSolution(selected=chosen, hypervolume=value, method=method, trace=trace if trace is None or trace.enabled else None)


def _new_trace(method: HsspMethod, trace: Optional[bool]) -> SolverTrace:
    enabled = load_settings().trace if trace is None else trace
    return SolverTrace(method.value, enabled=enabled)


def hssp_exact_2d(front: FrontLike, r: Sequence[float], k: int, trace: Optional[bool] = None) -> HsspSolution:
    """
    Optimal two-objective subset by dynamic programming over points sorted by x.

    f(t, i) is the best hypervolume of t points whose rightmost point is i:
    f(t, i) = max_j f(t-1, j) + (r_x - x_i) * (y_j - y_i), with f(1, i) the box
    of i alone. O(k n^2) time, O(k n) parent links.

    Raises:
        DimensionMismatchError: If d != 2
        ValueError: If k is outside [0, n]
    """
    front, ref = _inputs(front, r, k)
    if front.dim != 2:
        raise DimensionMismatchError(f"exact 2D subset selection needs d=2, front has d={front.dim}")
    log = _new_trace(HsspMethod.EXACT_2D, trace)

    inside = np.flatnonzero(clip_mask(front.points, ref))
    candidates = inside[nondominated_indices(front.points[inside])] if len(inside) else inside
    candidates = candidates[np.argsort(front.points[candidates, 0], kind="stable")]
    m = len(candidates)
    depth = min(k, m)
    if depth == 0:
        return _solution(front, ref, [], HsspMethod.EXACT_2D, log)

    xs = front.points[candidates, 0]
    ys = front.points[candidates, 1]
    widths = float(ref[0]) - xs
    best = np.full((depth + 1, m), -np.inf)
    parent = np.full((depth + 1, m), -1, dtype=np.intp)
    best[1] = widths * (float(ref[1]) - ys)

    def chain(t: int, i: int) -> Tuple[int, ...]:
        members = []
        while i >= 0 and t >= 1:
            members.append(int(candidates[i]))
            i = parent[t, i]
            t -= 1
        return tuple(sorted(members))

    for t in range(2, depth + 1):
        for i in range(t - 1, m):
            gains = best[t - 1, :i] + widths[i] * (ys[:i] - ys[i])
            top = gains.max()
            if not np.isfinite(top):
                continue
            tied = np.flatnonzero(gains == top)
            j = int(tied[0])
            if len(tied) > 1:
                j = min(tied, key=lambda c: chain(t - 1, int(c)) + (int(candidates[i]),))
            best[t, i] = top
            parent[t, i] = j
        log.record("layer", [], float(best[t].max()), size=t)

    optimum = best[1:].max()
    ties = [(t, i) for t, i in zip(*np.nonzero(best == optimum)) if t >= 1]
    t_best, i_best = min(ties, key=lambda ti: chain(int(ti[0]), int(ti[1])))
    return _solution(front, ref, chain(int(t_best), int(i_best)), HsspMethod.EXACT_2D, log)


def hssp_exhaustive(front: FrontLike, r: Sequence[float], k: int, budget: Optional[int] = None, trace: Optional[bool] = None) -> HsspSolution:
    """
    Optimal k-subset by enumerating every combination in lexicographic order.

    Raises:
        BudgetExceededError: If C(n, k) exceeds the budget
    """
    front, ref = _inputs(front, r, k)
    limit = load_settings().exhaustive_budget if budget is None else budget
    required = math.comb(len(front), k)
    if required > limit:
        raise BudgetExceededError(f"enumeration needs C({len(front)}, {k}) = {required} subsets, budget is {limit}", required=required, budget=limit)
    log = _new_trace(HsspMethod.EXHAUSTIVE, trace)
    pts = front.points
    best_set: Tuple[int, ...] = tuple(range(k))
    best_value = -1.0
    for combo in itertools.combinations(range(len(front)), k):
        value = _subset_hv(pts[list(combo)], ref)
        if value > best_value:
            best_value = value
            best_set = combo
            log.record("improve", list(combo), value)
    return _solution(front, ref, best_set, HsspMethod.EXHAUSTIVE, log)


def hssp_greedy_incremental(front: FrontLike, r: Sequence[float], k: int, trace: Optional[bool] = None) -> HsspSolution:
    """
    Add the point with the largest contribution to the selection, k times.

    Contributions of the remaining candidates are kept current through the
    two-set update, so every prefix of the trace is the greedy solution for its size.
    """
    front, ref = _inputs(front, r, k)
    log = _new_trace(HsspMethod.GREEDY_INC, trace)
    state = TwoSetContributionState.initial(front, ref)
    selected: List[int] = []
    taken = np.zeros(len(front), dtype=bool)
    total = 0.0
    for _ in range(k):
        scores = np.where(taken, -np.inf, state.contributions)
        index = int(np.argmax(scores))
        gain = float(state.contributions[index])
        if not state.in_accepted[index]:
            state = update_all_contributions_2set(state, front.point(index), UpdateMode.INCREMENTAL)
        taken[index] = True
        selected.append(index)
        total += gain
        log.record("add", [index], total, contribution=gain)
    return _solution(front, ref, selected, HsspMethod.GREEDY_INC, log)


def hssp_greedy_decremental(front: FrontLike, r: Sequence[float], k: int, trace: Optional[bool] = None) -> HsspSolution:
    """Discard the least contributor of the current set, n - k times."""
    front, ref = _inputs(front, r, k)
    log = _new_trace(HsspMethod.GREEDY_DEC, trace)
    remaining = list(range(len(front)))
    current = front
    table = all_contributions(current, ref)
    total = table.total_hv
    for _ in range(len(front) - k):
        position = int(np.argmin(table.values))
        p = current.point(position)
        first = int(np.flatnonzero(equal_rows(current.points, p))[0])
        table = update_all_contributions(current, ref, table, p, UpdateMode.DECREMENTAL)
        removed = remaining.pop(first)
        current = make_front(np.delete(current.points, first, axis=0), dim=front.dim)
        total = table.total_hv
        log.record("remove", [removed], total)
    return _solution(front, ref, remaining, HsspMethod.GREEDY_DEC, log)


def hssp_local_search(
    front: FrontLike,
    r: Sequence[float],
    k: int,
    swaps_per_move: int = 1,
    max_iters: int = 1000,
    seed: int = 0,
    trace: Optional[bool] = None,
) -> HsspSolution:
    """
    Random-swap local search from a seeded random k-subset.

    Each iteration exchanges swaps_per_move selected points for unselected ones
    chosen uniformly; the move is kept only when the hypervolume strictly grows.
    """
    front, ref = _inputs(front, r, k)
    if max_iters < 0:
        raise ValueError(f"max_iters must be >= 0, got {max_iters}")
    if swaps_per_move < 1:
        raise ValueError(f"swaps_per_move must be >= 1, got {swaps_per_move}")
    log = _new_trace(HsspMethod.LOCAL_SEARCH, trace)
    rng = np.random.default_rng(seed)
    n = len(front)
    pts = front.points
    selected = np.sort(rng.choice(n, size=k, replace=False)) if n else np.empty(0, dtype=np.intp)
    current = _subset_hv(pts[selected], ref)
    log.record("start", selected.tolist(), current)
    swaps = min(swaps_per_move, k, n - k)
    if swaps == 0:
        return _solution(front, ref, selected.tolist(), HsspMethod.LOCAL_SEARCH, log)

    rejected = 0
    for _ in range(max_iters):
        outside = np.setdiff1d(np.arange(n), selected)
        leaving = rng.choice(selected, size=swaps, replace=False)
        entering = rng.choice(outside, size=swaps, replace=False)
        proposal = np.sort(np.concatenate((np.setdiff1d(selected, leaving), entering)))
        value = _subset_hv(pts[proposal], ref)
        if value > current:
            selected, current = proposal, value
            log.record("accept", proposal.tolist(), current)
        else:
            rejected += 1
    log.record("finish", selected.tolist(), current, iterations=max_iters, rejected=rejected)
    return _solution(front, ref, selected.tolist(), HsspMethod.LOCAL_SEARCH, log)


def default_gsemo_iterations(n: int, k: int) -> int:
    """n^2 (ceil(ln n) + k), at least 1 for nonempty fronts."""
    if n == 0:
        return 0
    return max(1, n * n * (math.ceil(math.log(n)) + k))


def hssp_gsemo(
    front: FrontLike,
    r: Sequence[float],
    k: int,
    max_iters: Optional[int] = None,
    seed: int = 0,
    trace: Optional[bool] = None,
) -> HsspSolution:
    """
    GSEMO over subset bitmasks with objectives (hypervolume if size <= k else -1, excluded count).

    The population starts from the empty subset. A uniformly chosen parent is
    mutated by flipping each bit with probability 1/n; the offspring enters only
    when no member is at least as good in both objectives, and members it
    dominates are removed.
    """
    front, ref = _inputs(front, r, k)
    n = len(front)
    iterations = default_gsemo_iterations(n, k) if max_iters is None else max_iters
    if iterations < 0:
        raise ValueError(f"max_iters must be >= 0, got {iterations}")
    log = _new_trace(HsspMethod.GSEMO, trace)
    if n == 0:
        return _solution(front, ref, [], HsspMethod.GSEMO, log)

    rng = np.random.default_rng(seed)
    pts = front.points
    cache: Dict[bytes, float] = {}

    def evaluate(mask: np.ndarray) -> Tuple[float, int]:
        size = int(mask.sum())
        if size > k:
            return -1.0, n - size
        key = mask.tobytes()
        if key not in cache:
            cache[key] = _subset_hv(pts[mask], ref)
        return cache[key], n - size

    empty = np.zeros(n, dtype=bool)
    population: List[Tuple[np.ndarray, float, int]] = [(empty, *evaluate(empty))]
    for _ in range(iterations):
        parent = population[int(rng.integers(len(population)))][0]
        child = parent ^ (rng.random(n) < 1.0 / n)
        hv_child, excluded = evaluate(child)
        if any(h >= hv_child and e >= excluded for _, h, e in population):
            continue
        population = [ind for ind in population if not (hv_child >= ind[1] and excluded >= ind[2])]
        population.append((child, hv_child, excluded))
        log.record("insert", np.flatnonzero(child).tolist(), max(h for _, h, _ in population), population=len(population))

    feasible = [(h, tuple(np.flatnonzero(mask).tolist())) for mask, h, e in population if n - e <= k]
    best_value = max(h for h, _ in feasible)
    chosen = min(indices for h, indices in feasible if h == best_value)
    return _solution(front, ref, chosen, HsspMethod.GSEMO, log)


def tighter_greedy_bound(n: int, k: int) -> float:
    """1 - (1 - m/k)(1 - 1/k)^(k - m) with m = max(0, 2k - n)."""
    if k <= 0:
        return 1.0
    m = max(0, 2 * k - n)
    return 1.0 - (1.0 - m / k) * (1.0 - 1.0 / k) ** (k - m)


def complement_loss(front: FrontLike, r: Sequence[float], selected: Sequence[int]) -> float:
    """Volume lost by discarding the points not selected: H(S) - H(selected)."""
    ref = make_point(r)
    if not isinstance(front, Front) and len(front) == 0:
        front = make_front(front, dim=len(ref))
    front = make_front(front)
    pts = front.points
    chosen = sorted(set(int(i) for i in selected))
    return max(0.0, _subset_hv(pts, ref) - _subset_hv(pts[chosen], ref))


_SOLVERS = {
    HsspMethod.EXACT_2D: hssp_exact_2d,
    HsspMethod.EXHAUSTIVE: hssp_exhaustive,
    HsspMethod.GREEDY_INC: hssp_greedy_incremental,
    HsspMethod.GREEDY_DEC: hssp_greedy_decremental,
    HsspMethod.LOCAL_SEARCH: hssp_local_search,
    HsspMethod.GSEMO: hssp_gsemo,
}


def hssp(front: FrontLike, r: Sequence[float], k: int, method: Union[HsspMethod, str] = HsspMethod.GREEDY_INC, **options: Any) -> HsspSolution:
    """
    Run one subset-selection solver.

    Args:
        front: Candidate points
        r: Reference point
        k: Maximum subset size
        method: Solver name
        **options: Solver keyword arguments (seed, max_iters, swaps_per_move, budget, trace)
    """
    method = HsspMethod(method)
    return _SOLVERS[method](front, r, k, **options)


@dataclass
class ApproximationReport:
    """
    Hypervolume of every solver relative to the enumerated optimum.

    Attributes:
        n: Front size
        k: Subset size
        optimum: Exhaustive optimum
        hypervolumes: Solver name -> hypervolume
        ratios: Solver name -> hypervolume / optimum (1 when the optimum is 0)
        bounds: Solver name -> guaranteed ratio
        checks: Solver name -> whether the guarantee holds
        tighter_bound: Sharper greedy bound for k > n / 2
    """
    n: int
    k: int
    optimum: float
    hypervolumes: Dict[str, float] = field(default_factory=dict)
    ratios: Dict[str, float] = field(default_factory=dict)
    bounds: Dict[str, float] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    tighter_bound: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "optimum": self.optimum,
            "hypervolumes": dict(self.hypervolumes),
            "ratios": dict(self.ratios),
            "bounds": dict(self.bounds),
            "checks": dict(self.checks),
            "tighter_bound": self.tighter_bound,
            "passed": self.passed,
        }


GREEDY_SLACK = 1e-12


def approximation_report(
    front: FrontLike,
    r: Sequence[float],
    k: int,
    seed: int = 0,
    budget: Optional[int] = None,
    methods: Optional[Sequence[Union[HsspMethod, str]]] = None,
) -> ApproximationReport:
    """
    Run the solvers next to exhaustive enumeration and check the greedy guarantees.

    Raises:
        BudgetExceededError: If enumeration is out of budget
    """
    front, ref = _inputs(front, r, k)
    n = len(front)
    optimum = hssp_exhaustive(front, ref, k, budget=budget, trace=False).hypervolume
    if methods is None:
        methods = [HsspMethod.GREEDY_INC, HsspMethod.GREEDY_DEC, HsspMethod.LOCAL_SEARCH, HsspMethod.GSEMO]
        if front.dim == 2:
            methods.insert(0, HsspMethod.EXACT_2D)
    report = ApproximationReport(n=n, k=k, optimum=optimum, tighter_bound=tighter_greedy_bound(n, k))

    for method in methods:
        method = HsspMethod(method)
        options: Dict[str, Any] = {"trace": False}
        if method in (HsspMethod.LOCAL_SEARCH, HsspMethod.GSEMO):
            options["seed"] = seed
        value = hssp(front, ref, k, method, **options).hypervolume
        ratio = value / optimum if optimum > 0.0 else 1.0
        report.hypervolumes[method.value] = value
        report.ratios[method.value] = ratio

    if HsspMethod.GREEDY_INC.value in report.ratios:
        report.bounds[HsspMethod.GREEDY_INC.value] = 1.0 - 1.0 / math.e
        report.checks[HsspMethod.GREEDY_INC.value] = report.ratios[HsspMethod.GREEDY_INC.value] >= 1.0 - 1.0 / math.e - GREEDY_SLACK
    if HsspMethod.GREEDY_DEC.value in report.ratios:
        bound = k / n if n else 1.0
        report.bounds[HsspMethod.GREEDY_DEC.value] = bound
        report.checks[HsspMethod.GREEDY_DEC.value] = report.ratios[HsspMethod.GREEDY_DEC.value] >= bound - GREEDY_SLACK
    if HsspMethod.EXACT_2D.value in report.ratios:
        report.bounds[HsspMethod.EXACT_2D.value] = 1.0
        report.checks[HsspMethod.EXACT_2D.value] = math.isclose(report.ratios[HsspMethod.EXACT_2D.value], 1.0, rel_tol=1e-12)
    if 2 * k > n:
        logger.info("[hssp] tighter_greedy_bound=%.6f n=%s k=%s", report.tighter_bound, n, k)
    return report
