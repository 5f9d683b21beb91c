"""
Benchmark harness behind `hvx bench`.

Each (d, n) cell builds one seeded spherical front, runs one untimed warm-up
call and then `reps` timed calls of the core algorithm. Cells may run on a
worker pool; records are returned in cell order.
"""

import logging
import subprocess
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from hvx.contributions import all_contributions
from hvx.hypervolume import hv
from hvx.subset import hssp_greedy_incremental

from ..generators import generate
from ..models import COLUMNS, BenchRecord

logger = logging.getLogger(__name__)

REFERENCE_OFFSET = 1.1


class Suite(str, Enum):
    HV = "hv"
    CONTRIB = "contrib"
    HSSP = "hssp"


def git_describe() -> str:
    try:
        completed = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            capture_output=True,
            text=True,
            check=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return completed.stdout.strip() or "unknown"


def subset_size(n: int) -> int:
    return max(1, n // 10) if n else 0


def _core_call(suite: Suite, points: np.ndarray, ref: Tuple[float, ...]) -> Tuple[Callable[[], float], str]:
    """The timed callable and the algorithm id it reports."""
    d = points.shape[1]
    if suite == Suite.HV:
        algorithm = {2: "2d", 3: "3d", 4: "4d"}.get(d, "wfg")
        return (lambda: hv(points, ref).value), f"hv-{algorithm}"
    if suite == Suite.CONTRIB:
        return (lambda: all_contributions(points, ref).total_hv), f"contrib-{d}d"
    k = subset_size(len(points))
    return (lambda: hssp_greedy_incremental(points, ref, k, trace=False).hypervolume), "hssp-greedy-inc"


def run_cell(task: Tuple[str, int, int, int, int, str]) -> List[BenchRecord]:
    """Warm up once, then time `reps` calls for one (d, n) cell."""
    suite_name, d, n, reps, seed, describe = task
    suite = Suite(suite_name)
    points = generate("spherical", n, d, seed)
    ref = (REFERENCE_OFFSET,) * d
    call, algorithm_id = _core_call(suite, points, ref)
    call()
    k = subset_size(n) if suite == Suite.HSSP else None
    records = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        value = call()
        elapsed = time.perf_counter_ns() - start
        records.append(BenchRecord(algorithm_id, d, n, k, elapsed, float(value), seed, describe))
    return records


def run_bench(
    suite: str,
    sizes: Sequence[int],
    dims: Sequence[int],
    reps: int,
    seed: int = 0,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Time one suite over every (d, n) combination.

    Returns:
        DataFrame with one row per timed call, columns in BenchRecord order
    """
    suite = Suite(suite)
    describe = git_describe()
    tasks = [(suite.value, d, n, reps, seed, describe) for d in dims for n in sizes]
    logger.info("[bench] suite=%s cells=%s reps=%s workers=%s", suite.value, len(tasks), reps, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(run_cell, tasks))
    else:
        cells = [run_cell(task) for task in tasks]
    rows = [record.to_dict() for cell in cells for record in cell]
    return pd.DataFrame(rows, columns=list(COLUMNS))


def fit_slopes(frame: pd.DataFrame) -> Dict[Tuple[str, int], float]:
    """Log-log slope of median wall time against n, per algorithm and dimension."""
    slopes: Dict[Tuple[str, int], float] = {}
    medians = frame.groupby(["algorithm_id", "d", "n"], as_index=False)["wall_time_ns"].median()
    for (algorithm_id, d), group in medians.groupby(["algorithm_id", "d"]):
        group = group[(group["n"] > 0) & (group["wall_time_ns"] > 0)]
        if group["n"].nunique() < 2:
            continue
        slope, _ = np.polyfit(np.log(group["n"].to_numpy(float)), np.log(group["wall_time_ns"].to_numpy(float)), 1)
        slopes[(str(algorithm_id), int(d))] = float(slope)
        logger.info("[bench] algorithm=%s d=%s slope=%.3f", algorithm_id, d, slope)
    return slopes
