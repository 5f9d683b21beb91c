"""
PropertyVerifier - randomized oracle-equivalence suite behind `hvx verify`.

Every check draws its instances from a generator seeded with
(seed, case index, check id), so a given seed always replays the same stream
whether the cases run in-process or on a worker pool.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from hvx import contributions, geometry, hypervolume, oracles, subset
from hvx.hypervolume import UpdateMode

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-9
ABSOLUTE_TOLERANCE = 1e-9


def close(a: float, b: float, rel: float = RELATIVE_TOLERANCE) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=ABSOLUTE_TOLERANCE)


def random_points(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """Integer grid points (many ties) or continuous points, some outside the box [0, 5]^d."""
    if rng.random() < 0.5:
        return rng.integers(0, 7, size=(n, d)).astype(float)
    return rng.uniform(0.0, 6.0, size=(n, d))


def random_front(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """Continuous nondominated points strictly inside [0, 5)^d."""
    pts = rng.uniform(0.0, 5.0, size=(4 * n + 4, d))
    pts = pts[geometry.nondominated_indices(pts)]
    return pts[:n]


def reference(d: int) -> Tuple[float, ...]:
    return (5.0,) * d


def check_hv_oracle_agreement(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 7))
    n = int(rng.integers(0, 9 if d <= 4 else 7))
    pts, r = random_points(rng, n, d), reference(d)
    expected = oracles.hv_grid(pts, r)
    values = {
        "auto": hypervolume.hv(pts, r).value,
        "wfg": hypervolume.hv_wfg(pts, r).value,
        "hso": oracles.hv_hso(pts, r),
        "ie": oracles.hv_inclusion_exclusion(pts, r),
    }
    wrong = {name: v for name, v in values.items() if not close(v, expected)}
    if wrong:
        return f"d={d} n={n} grid={expected} disagree={wrong}"
    return None


def check_contribution_identity(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 6))
    n = int(rng.integers(1, 9))
    pts, r = random_points(rng, n, d), reference(d)
    table = contributions.all_contributions(pts, r)
    total = oracles.hv_grid(pts, r)
    for i in range(n):
        expected = total - oracles.hv_grid(np.delete(pts, i, axis=0), r)
        if not close(table[i], expected):
            return f"d={d} n={n} index={i} table={table[i]} oracle={expected}"
    return None


def check_delimiter_identity(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 5))
    n = int(rng.integers(1, 8))
    pts, r = random_points(rng, n, d), reference(d)
    p = pts[int(rng.integers(n))]
    delimiters = geometry.bound_and_filter(p, pts)
    bounded = geometry.box_volume(p, r) - oracles.hv_grid(delimiters.joined_points, r)
    expected = oracles.contribution_oracle(p, pts, r)
    if not close(max(0.0, bounded), expected):
        return f"d={d} n={n} bounded={bounded} oracle={expected}"
    return None


def check_update_equivalence(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 5))
    r = reference(d)
    pts = random_points(rng, int(rng.integers(1, 7)), d)
    table = contributions.all_contributions(pts, r)
    known = table.total_hv
    for _ in range(8):
        if len(pts) and rng.random() < 0.4:
            p = pts[int(rng.integers(len(pts)))]
            mode = UpdateMode.DECREMENTAL
        else:
            p = random_points(rng, 1, d)[0]
            if len(pts) and np.any(geometry.equal_rows(pts, p)):
                continue
            mode = UpdateMode.INCREMENTAL
        known = hypervolume.update_hv(pts, r, known, p, mode).value
        table = contributions.update_all_contributions(pts, r, table, p, mode)
        if mode == UpdateMode.INCREMENTAL:
            pts = np.vstack((pts, p))
        else:
            pts = np.delete(pts, int(np.flatnonzero(geometry.equal_rows(pts, p))[0]), axis=0)
    fresh = contributions.all_contributions(pts, r) if len(pts) else None
    if not close(known, hypervolume.hv(pts, r).value if len(pts) else 0.0):
        return f"d={d} updated hv={known} differs from recomputation"
    if fresh is not None and not all(close(a, b) for a, b in zip(table.values, fresh.values)):
        return f"d={d} updated table {table.values.tolist()} != {fresh.values.tolist()}"
    return None


def check_two_set_equivalence(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 5))
    r = reference(d)
    candidates = random_points(rng, int(rng.integers(1, 8)), d)
    state = contributions.TwoSetContributionState.initial(candidates, r)
    for _ in range(6):
        accepted = state.accepted
        if len(accepted) and rng.random() < 0.35:
            p = accepted[int(rng.integers(len(accepted)))]
            mode = UpdateMode.DECREMENTAL
        else:
            p = candidates[int(rng.integers(len(candidates)))]
            if len(accepted) and np.any(geometry.equal_rows(accepted, p)):
                continue
            mode = UpdateMode.INCREMENTAL
        state = contributions.update_all_contributions_2set(state, p, mode)
    base = oracles.hv_grid(state.accepted, r) if len(state.accepted) else 0.0
    for i, s in enumerate(candidates):
        in_accepted = len(state.accepted) and np.any(geometry.equal_rows(state.accepted, s))
        expected = 0.0 if in_accepted else oracles.hv_grid(np.vstack((state.accepted, s)), r) - base
        if not close(state.contributions[i], expected):
            return f"d={d} candidate={i} state={state.contributions[i]} oracle={expected}"
    return None


def check_submodularity(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 5))
    n = int(rng.integers(2, 9))
    pts, r = random_points(rng, n, d), reference(d)
    a = rng.random(n) < 0.5
    b = rng.random(n) < 0.5

    def value(mask: np.ndarray) -> float:
        return hypervolume.hv(pts[mask], r).value if mask.any() else 0.0

    za, zb, zu, zi = value(a), value(b), value(a | b), value(a & b)
    if za + zb < zu + zi - 1e-12 * max(1.0, zu):
        return f"d={d} submodularity violated: {za}+{zb} < {zu}+{zi}"
    if zi > za + 1e-12 * max(1.0, za) or za > zu + 1e-12 * max(1.0, zu):
        return f"d={d} monotonicity violated: {zi} <= {za} <= {zu} fails"
    return None


def check_greedy_guarantees(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 5))
    n = int(rng.integers(1, 9))
    pts, r = random_points(rng, n, d), reference(d)
    k = int(rng.integers(0, n + 1))
    report = subset.approximation_report(
        pts, r, k, methods=[subset.HsspMethod.GREEDY_INC, subset.HsspMethod.GREEDY_DEC]
    )
    if not report.passed:
        return f"d={d} n={n} k={k} ratios={report.ratios} bounds={report.bounds}"
    return None


def check_exact2d_enumeration(rng: np.random.Generator) -> Optional[str]:
    n = int(rng.integers(1, 11))
    pts, r = random_points(rng, n, 2), reference(2)
    for k in range(n + 1):
        exact = subset.hssp_exact_2d(pts, r, k, trace=False).hypervolume
        optimum = subset.hssp_exhaustive(pts, r, k, trace=False).hypervolume
        if not close(exact, optimum, rel=1e-12):
            return f"n={n} k={k} dp={exact} enumeration={optimum}"
    return None


def check_lub_count_law(rng: np.random.Generator) -> Optional[str]:
    d = int(rng.integers(2, 4))
    n = int(rng.integers(0, 11))
    pts, r = random_front(rng, n, d), reference(d)
    bounds = hypervolume.local_upper_bounds(pts, r)
    expected = len(pts) + 1 if d == 2 else 2 * len(pts) + 1
    if len(bounds) != expected:
        return f"d={d} n={len(pts)} bounds={len(bounds)} expected={expected}"
    for u in bounds.bounds:
        if not hypervolume.in_search_region(u, pts, r):
            return f"d={d} bound {u.tolist()} outside the search region"
    return None


CHECKS: Dict[str, Callable[[np.random.Generator], Optional[str]]] = {
    "hv_oracle_agreement": check_hv_oracle_agreement,
    "contribution_identity": check_contribution_identity,
    "delimiter_identity": check_delimiter_identity,
    "update_equivalence": check_update_equivalence,
    "two_set_equivalence": check_two_set_equivalence,
    "submodularity_monotonicity": check_submodularity,
    "greedy_guarantees": check_greedy_guarantees,
    "exact2d_enumeration": check_exact2d_enumeration,
    "lub_count_law": check_lub_count_law,
}
_CHECK_IDS = {name: number for number, name in enumerate(CHECKS)}


def case_rng(name: str, seed: int, index: int) -> np.random.Generator:
    """Generator for one case of one check."""
    return np.random.default_rng([seed, index, _CHECK_IDS[name]])


@dataclass(frozen=True)
class CaseResult:
    name: str
    index: int
    failure: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def run_case(task: Tuple[str, int, int]) -> CaseResult:
    """Run one (check, seed, index) case; exceptions count as failures."""
    name, seed, index = task
    try:
        failure = CHECKS[name](case_rng(name, seed, index))
    except Exception as exc:
        failure = f"{type(exc).__name__}: {exc}"
    return CaseResult(name=name, index=index, failure=failure)


class PropertyVerifier:
    """
    Runs every property check on a stream of seeded random instances.

    Args:
        cases: Instances per check
        seed: Base seed of every instance stream
        workers: Worker processes (1 runs in-process)
        checks: Subset of CHECKS to run (all by default)
    """

    DEFAULT_CASES = 25

    def __init__(
        self,
        cases: Optional[int] = None,
        seed: int = 0,
        workers: int = 1,
        checks: Optional[Sequence[str]] = None,
    ):
        self.cases = self.DEFAULT_CASES if cases is None else max(1, cases)
        self.seed = seed
        self.workers = max(1, workers)
        self.checks = list(CHECKS) if checks is None else list(checks)
        unknown = [name for name in self.checks if name not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}")

    def run(self) -> Dict[str, Any]:
        """
        Run all cases.

        Returns:
            Summary with per-check case and failure counts, ordered as the checks
        """
        tasks = [(name, self.seed, index) for name, index in itertools.product(self.checks, range(self.cases))]
        logger.info("[verify] checks=%s cases=%s workers=%s seed=%s", len(self.checks), self.cases, self.workers, self.seed)
        if self.workers == 1:
            results = [run_case(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(run_case, tasks, chunksize=max(1, len(tasks) // (4 * self.workers))))
        return self._combine_check_results(results)

    def _combine_check_results(self, results: List[CaseResult]) -> Dict[str, Any]:
        """Group case results by check, keeping the first failure of each."""
        summary = []
        for name in self.checks:
            own = [res for res in results if res.name == name]
            failures = [res for res in own if res.failure is not None]
            if failures:
                logger.warning("[verify] check=%s failures=%s first=%s", name, len(failures), failures[0].failure)
            summary.append(
                {
                    "name": name,
                    "cases": len(own),
                    "failures": len(failures),
                    "first_failure": failures[0].to_dict() if failures else None,
                }
            )
        failed = [entry["name"] for entry in summary if entry["failures"]]
        return {
            "passed": not failed,
            "seed": self.seed,
            "checks": summary,
            "failed_checks": failed,
        }
