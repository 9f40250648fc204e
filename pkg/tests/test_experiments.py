"""Noise-sweep driver: determinism, CSV round trips, summaries."""
import io
import math

import pytest

from llgames import experiments
from llgames.experiments import (ExperimentGrid, ResultRow, grid_tasks,
                                 parse_config, read_rows, row_seed, run_grid,
                                 run_row, summarize, summary_csv, write_rows,
                                 write_summary)

SMALL = ExperimentGrid(game="kuhn", ks=(1,), models=("independent",),
                       gammas=(0.0, 0.5), seeds=4)


def test_grid_tasks_order_and_seeds():
    tasks = grid_tasks(SMALL)
    assert len(tasks) == 8
    assert tasks[0][:4] == (1, "independent", 0.0, 0)
    seeds = [t[4] for t in tasks]
    assert len(set(seeds)) == len(seeds)
    assert seeds[0] == row_seed(SMALL, 1, "independent", 0.0, 0)


def test_seeds_k2_reduces_deep_points():
    grid = ExperimentGrid(ks=(1, 2), seeds=10, seeds_k2=3)
    assert grid.seeds_for(1) == 10
    assert grid.seeds_for(2) == 3
    tasks = grid_tasks(grid)
    assert sum(1 for t in tasks if t[0] == 2) == 3 * len(grid.models) * len(
        grid.gammas)


def test_rows_deterministic_across_workers():
    rows1 = run_grid(SMALL, workers=1)
    rows2 = run_grid(SMALL, workers=2)
    assert [r.as_list()[:8] for r in rows1] == [r.as_list()[:8] for r in rows2]


def test_zero_gamma_rows_share_one_value():
    rows = run_grid(SMALL, workers=1)
    zero = [r.value for r in rows if r.gamma == 0.0]
    assert len(set(zero)) == 1


def test_values_within_utility_range():
    rows = run_grid(SMALL, workers=1)
    for r in rows:
        assert r.status == "Optimal"
        assert -2.0 <= r.value <= 2.0  # raw payoffs live in [-2, 2]


def test_sink_receives_rows_in_order():
    got = []
    rows = run_grid(SMALL, workers=1, sink=got.append)
    assert got == rows


def test_row_csv_round_trip():
    rows = run_grid(SMALL, workers=1)
    buf = io.StringIO()
    write_rows(rows, buf)
    back = read_rows(io.StringIO(buf.getvalue()))
    assert back == rows
    with pytest.raises(ValueError):
        read_rows(io.StringIO("not,a,row,header\n"))


def row(gamma, seed, value, status="Optimal"):
    return ResultRow("kuhn", 1, 1, "independent", gamma, seed, value,
                     status, 1.0)


def test_summarize_examples():
    one = summarize([row(0.0, 0, 0.25)])[0]
    assert one["mean"] == 0.25 and one["std"] == 0.0 and one["stderr"] == 0.0
    assert one["count"] == 1
    two = summarize([row(0.0, 0, 0.0), row(0.0, 1, 2.0)])[0]
    # Population std (ddof=0): sqrt(((0-1)^2 + (2-1)^2)/2) = 1.
    assert two["mean"] == 1.0 and two["std"] == 1.0
    assert two["stderr"] == pytest.approx(1.0 / math.sqrt(2))


def test_summarize_skips_error_rows():
    recs = summarize([row(0.0, 0, 1.0),
                      row(0.0, 1, math.nan, "error:RuntimeError")])
    assert recs[0]["count"] == 1 and recs[0]["mean"] == 1.0
    only_bad = summarize([row(0.5, 0, math.nan, "error:ValueError")])
    assert only_bad[0]["count"] == 0 and math.isnan(only_bad[0]["mean"])


def test_summary_csv_stable():
    rows = run_grid(SMALL, workers=1)
    assert summary_csv(rows) == summary_csv(rows)
    buf = io.StringIO()
    write_summary(summarize(rows), buf)
    assert buf.getvalue() == summary_csv(rows)
    header = summary_csv(rows).splitlines()[0]
    assert header == "game,rational,k,model,gamma,mean,std,stderr,count"


def test_run_row_captures_errors():
    bad = ExperimentGrid(game="missing.game", game_file="missing.game",
                         ks=(1,), seeds=1)
    out = run_row(bad, 1, "independent", 0.0, 0)
    assert out.status.startswith("error:")
    assert math.isnan(out.value)


def test_parse_config():
    grid = parse_config("""
    # sweep config
    game = kuhn
    rational = 2
    ks = 1,2
    models = independent,cumulative
    gammas = 0,0.25,0.5
    seeds = 50
    seeds_k2 = 5
    master_seed = 9
    """)
    assert grid.game == "kuhn" and grid.rational == 2
    assert grid.ks == (1, 2)
    assert grid.gammas == (0.0, 0.25, 0.5)
    assert grid.seeds == 50 and grid.seeds_k2 == 5
    assert grid.master_seed == 9
    with pytest.raises(ValueError):
        parse_config("bogus_key = 1\n")
    with pytest.raises(ValueError):
        parse_config("just a line\n")
    with pytest.raises(AssertionError):
        parse_config("rational = 3\n")
