"""Noise-sweep experiment driver.

Runs the commitment solver across a grid of (game, rational seat, lookahead
depth, noise model, gamma) points, many seeds per point, and writes row and
summary CSVs.  Row seeds are derived by hashing the master seed with the
full grid coordinates, so results are reproducible and independent of how
the work is scheduled across processes.
"""
from __future__ import annotations

import csv
import io
import math
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from .builders import build_game
from .commitment import solve_adversarial, solve_favorable
from .equilibrium import solve_zero_sum
from .gameio import load_game
from .heuristics import CUMULATIVE, INDEPENDENT, make_heuristic_exact, \
    make_heuristic_noisy
from .lookahead import ADVERSARIAL, FAVORABLE, LookaheadSpec
from .rng import mix_seed

ROW_FIELDS = ["game", "rational", "k", "model", "gamma", "seed", "value",
              "status", "ms"]
SUMMARY_FIELDS = ["game", "rational", "k", "model", "gamma", "mean", "std",
                  "stderr", "count"]


@dataclass(frozen=True)
class ExperimentGrid:
    """One sweep: every (k, model, gamma) combination times ``seeds`` rows.

    ``seeds_k2`` optionally reduces the per-point replicate count for depths
    >= 2 (the deep solves are far slower, especially on kj).  ``game_file``
    supplies the game text when ``game`` is not a built-in name.
    """

    game: str = "kuhn"
    rational: int = 1
    ks: tuple[int, ...] = (1, 2)
    models: tuple[str, ...] = (INDEPENDENT, CUMULATIVE)
    gammas: tuple[float, ...] = (0.0, 0.25, 0.5, 1.0, 2.0)
    seeds: int = 1000
    seeds_k2: int | None = None
    tie_break: str = ADVERSARIAL
    master_seed: int = 0
    node_limit: int = 200_000
    game_file: str | None = None

    def __post_init__(self):
        assert self.rational in (1, 2)
        assert self.seeds >= 1
        assert all(g >= 0 for g in self.gammas)
        assert all(k >= 1 for k in self.ks)
        assert all(m in (INDEPENDENT, CUMULATIVE) for m in self.models)
        assert self.tie_break in (ADVERSARIAL, FAVORABLE)

    def seeds_for(self, k: int) -> int:
        if k >= 2 and self.seeds_k2 is not None:
            return self.seeds_k2
        return self.seeds


@dataclass(frozen=True)
class ResultRow:
    game: str
    rational: int
    k: int
    model: str
    gamma: float
    seed: int
    value: float
    status: str
    ms: float

    def as_list(self) -> list:
        return [self.game, self.rational, self.k, self.model,
                repr(self.gamma), self.seed, repr(self.value), self.status,
                repr(self.ms)]


def row_seed(grid: ExperimentGrid, k: int, model: str, gamma: float,
             replicate: int) -> int:
    return mix_seed(grid.master_seed, grid.game, grid.rational, k, model,
                    gamma, replicate)


def grid_tasks(grid: ExperimentGrid) -> list[tuple]:
    """All (k, model, gamma, replicate, seed) tuples in deterministic order."""
    tasks = []
    for model in grid.models:
        for k in grid.ks:
            for gamma in grid.gammas:
                for rep in range(grid.seeds_for(k)):
                    tasks.append((k, model, gamma, rep,
                                  row_seed(grid, k, model, gamma, rep)))
    return tasks


# Per-process caches: the game and base heuristic per grid, and solved
# results keyed by the heuristic's content so gamma=0 rows (and any other
# hash collisions of convenience) are solved once.
_games: dict = {}
_solves: dict = {}


def _game_and_base(grid: ExperimentGrid):
    key = (grid.game, grid.game_file, grid.rational)
    if key not in _games:
        if grid.game in ("kuhn", "kj"):
            game = build_game(grid.game, grid.rational)
        else:
            with open(grid.game_file or grid.game) as fh:
                game = load_game(fh.read(), name=grid.game)
        profile = solve_zero_sum(game)
        base = make_heuristic_exact(game, profile)
        _games[key] = (game, base)
    return _games[key]


def run_row(grid: ExperimentGrid, k: int, model: str, gamma: float,
            seed: int) -> ResultRow:
    """Solve one grid point replicate; failures land in the status column."""
    t0 = time.perf_counter()
    try:
        game, base = _game_and_base(grid)
        h = make_heuristic_noisy(base, model, gamma, seed, game=game)
        cache_key = (grid.game, grid.game_file, grid.rational, k,
                     grid.tie_break, h.values.tobytes())
        if cache_key in _solves:
            value, status = _solves[cache_key]
        else:
            spec = LookaheadSpec(k, h, grid.tie_break)
            if grid.tie_break == ADVERSARIAL:
                res = solve_adversarial(game, spec,
                                        node_limit=grid.node_limit)
            else:
                res = solve_favorable(game, spec,
                                      node_limit=grid.node_limit)
            value, status = res.value_r, res.status
            _solves[cache_key] = (value, status)
    except Exception as exc:  # noqa: BLE001 - sweep must survive bad rows
        value, status = math.nan, f"error:{type(exc).__name__}"
    ms = (time.perf_counter() - t0) * 1000.0
    return ResultRow(grid.game, grid.rational, k, model, gamma, seed,
                     value, status, ms)


def _run_task(args) -> ResultRow:
    grid, task = args
    k, model, gamma, rep, seed = task
    return run_row(grid, k, model, gamma, seed)


def run_grid(grid: ExperimentGrid, workers: int = 1, sink=None):
    """Run the whole grid; returns the rows in deterministic task order.

    ``sink``, when given, receives each completed row in order (incremental
    flushing).  ``workers`` > 1 fans rows out to a process pool; the output
    order and content do not depend on the worker count.
    """
    tasks = grid_tasks(grid)
    rows = []
    if workers <= 1:
        for task in tasks:
            row = _run_task((grid, task))
            rows.append(row)
            if sink is not None:
                sink(row)
    else:
        with multiprocessing.Pool(workers) as pool:
            for row in pool.imap(_run_task, [(grid, t) for t in tasks],
                                 chunksize=16):
                rows.append(row)
                if sink is not None:
                    sink(row)
    return rows


def write_rows(rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for row in rows:
        writer.writerow(row.as_list())


def read_rows(fh) -> list[ResultRow]:
    reader = csv.DictReader(fh)
    if reader.fieldnames != ROW_FIELDS:
        raise ValueError(f"unexpected row CSV header {reader.fieldnames}")
    out = []
    for rec in reader:
        out.append(ResultRow(rec["game"], int(rec["rational"]), int(rec["k"]),
                             rec["model"], float(rec["gamma"]),
                             int(rec["seed"]), float(rec["value"]),
                             rec["status"], float(rec["ms"])))
    return out


def summarize(rows) -> list[dict]:
    """Per-point mean / population std / stderr over successfully solved rows.

    Rows whose status marks an error (or whose value is NaN) are excluded
    from the statistics but still counted in ``count`` only when solved.
    Output order follows the first appearance of each point, which matches
    the deterministic task order for rows straight from run_grid.
    """
    groups: dict = {}
    order = []
    for row in rows:
        key = (row.game, row.rational, row.k, row.model, row.gamma)
        if key not in groups:
            groups[key] = []
            order.append(key)
        if not row.status.startswith("error") and not math.isnan(row.value):
            groups[key].append(row.value)
    out = []
    for key in order:
        vals = np.array(groups[key])
        game, rational, k, model, gamma = key
        if vals.size == 0:
            mean = std = stderr = math.nan
        else:
            mean = float(vals.mean())
            std = float(vals.std(ddof=0))
            stderr = std / math.sqrt(vals.size)
        out.append({"game": game, "rational": rational, "k": k,
                    "model": model, "gamma": gamma, "mean": mean,
                    "std": std, "stderr": stderr, "count": int(vals.size)})
    return out


def write_summary(summary, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SUMMARY_FIELDS)
    for rec in summary:
        writer.writerow([rec["game"], rec["rational"], rec["k"], rec["model"],
                         repr(rec["gamma"]), repr(rec["mean"]),
                         repr(rec["std"]), repr(rec["stderr"]), rec["count"]])


def summary_csv(rows) -> str:
    buf = io.StringIO()
    write_summary(summarize(rows), buf)
    return buf.getvalue()


def parse_config(text: str) -> ExperimentGrid:
    """Flat key=value config; '#' comments; lists are comma-separated."""
    kv = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, val = line.split("=", 1)
        kv[key.strip()] = val.strip()

    def ints(s):
        return tuple(int(v) for v in s.split(","))

    def floats(s):
        return tuple(float(v) for v in s.split(","))

    def strs(s):
        return tuple(v.strip() for v in s.split(","))

    known = {"game": str, "rational": int, "ks": ints, "models": strs,
             "gammas": floats, "seeds": int, "seeds_k2": int,
             "tie_break": str, "master_seed": int, "node_limit": int,
             "game_file": str}
    args = {}
    for key, val in kv.items():
        if key not in known:
            raise ValueError(f"unknown config key {key!r}")
        args[key] = known[key](val)
    return ExperimentGrid(**args)
