import logging
import subprocess
import time

import numpy as np
import pandas as pd
import pytest

from hvx.hypervolume import hv_3d
from hvx_cli.app import main
from hvx_cli.models import COLUMNS, BenchRecord
from hvx_cli.suites import bench
from hvx_cli.suites.bench import fit_slopes, git_describe, run_bench, subset_size


@pytest.fixture(autouse=True)
def fixed_describe(monkeypatch):
    monkeypatch.setattr(bench, "git_describe", lambda: "v-test")


def test_record_columns():
    record = BenchRecord("hv-3d", 3, 100, None, 1234, 0.5, 0, "abc")
    assert list(record.to_dict()) == list(COLUMNS)
    assert "wall_time_ns=1234" in repr(record)


def test_hv_suite_frame():
    frame = run_bench("hv", sizes=[10, 20], dims=[2, 3], reps=2, seed=1)
    assert list(frame.columns) == list(COLUMNS)
    assert len(frame) == 8
    assert set(frame["algorithm_id"]) == {"hv-2d", "hv-3d"}
    assert frame["k"].isna().all()
    assert (frame["wall_time_ns"] > 0).all()
    assert set(frame["git_describe"]) == {"v-test"}
    assert list(frame["n"]) == [10, 10, 20, 20, 10, 10, 20, 20]


@pytest.mark.parametrize("suite,algorithm", [("contrib", "contrib-3d"), ("hssp", "hssp-greedy-inc")])
def test_other_suites(suite, algorithm):
    frame = run_bench(suite, sizes=[20], dims=[3], reps=1)
    assert frame["algorithm_id"].tolist() == [algorithm]
    assert frame["value"].iloc[0] > 0.0
    if suite == "hssp":
        assert frame["k"].iloc[0] == subset_size(20) == 2


def test_same_value_for_every_repetition():
    frame = run_bench("hv", sizes=[30], dims=[4], reps=3, seed=2)
    assert frame["value"].nunique() == 1


def test_git_describe_falls_back(monkeypatch):
    monkeypatch.undo()

    def missing(*args, **kwargs):
        raise OSError("git not installed")

    monkeypatch.setattr(subprocess, "run", missing)
    assert git_describe() == "unknown"


def test_fit_slopes(caplog):
    sizes = [100, 1000, 10000]
    frame = pd.DataFrame(
        [BenchRecord("hv-3d", 3, n, None, n * n, 0.0, 0, "x").to_dict() for n in sizes for _ in range(3)],
        columns=list(COLUMNS),
    )
    with caplog.at_level(logging.INFO, logger="hvx_cli.suites.bench"):
        slopes = fit_slopes(frame)
    assert slopes[("hv-3d", 3)] == pytest.approx(2.0)
    assert "slope=2.000" in caplog.text


def test_command_writes_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--suite", "contrib", "--sizes", "10,20", "--dims", "2", "--reps", "1", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == list(COLUMNS)
    assert len(frame) == 2


def test_command_rejects_zero_reps():
    assert main(["bench", "--suite", "hv", "--sizes", "10", "--dims", "2", "--reps", "0"]) == 1


def _slope(suite, sizes, d, reps=3):
    return fit_slopes(run_bench(suite, sizes=sizes, dims=[d], reps=reps))


@pytest.mark.slow
def test_three_objective_hypervolume_is_near_n_log_n():
    slopes = _slope("hv", [1000, 10000, 100000], 3)
    assert slopes[("hv-3d", 3)] <= 1.3


@pytest.mark.slow
def test_two_objective_contributions_are_near_n_log_n():
    slopes = _slope("contrib", [1000, 10000, 100000], 2)
    assert slopes[("contrib-2d", 2)] <= 1.3


@pytest.mark.slow
def test_four_objective_hypervolume_is_near_quadratic():
    slopes = _slope("hv", [100, 1000], 4, reps=1)
    assert slopes[("hv-4d", 4)] <= 2.3


@pytest.mark.slow
def test_three_objective_sweep_inserting_at_the_left_end_stays_near_n_log_n():
    records = []
    for n in [5_000, 20_000, 80_000]:
        z = np.arange(n) / n
        front = np.column_stack((1.0 - z, z, z))
        for _ in range(3):
            start = time.perf_counter_ns()
            value = hv_3d(front, (2.0, 2.0, 2.0)).value
            elapsed = time.perf_counter_ns() - start
            records.append(BenchRecord("hv-3d-left", 3, n, None, elapsed, value, 0, "x").to_dict())
    slopes = fit_slopes(pd.DataFrame(records, columns=list(COLUMNS)))
    assert slopes[("hv-3d-left", 3)] <= 1.3
