"""Command-line interface (installed as ``llg``).

Subcommands mirror the library layers: game inspection, the LP/MIP backend,
equilibrium solving, heuristic dumps, lookahead inspection, commitment
solving, gadget generation, and the experiment driver.
"""
from __future__ import annotations

import sys

import click
import numpy as np

from . import builders, experiments, reductions
from .commitment import (CommitmentError, enumerate_structures_oracle,
                         solve_adversarial, solve_favorable, solve_static)
from .equilibrium import best_response, solve_zero_sum
from .gameio import GameParseError, GameValidationError, load_game, save_game
from .heuristics import (CUMULATIVE, INDEPENDENT, EvaluationFunction,
                         Provenance, make_heuristic_exact,
                         make_heuristic_noisy)
from .lookahead import (ADVERSARIAL, FAVORABLE, LookaheadSpec, StaticOrder,
                        UnreachableInfoset, optimal_actions)
from .optim import parse_lp, solve_lp, solve_mip
from .trees import GameTree, RealizationPlan, validate


def _load(path: str) -> GameTree:
    if path in ("kuhn", "kj"):
        return builders.build_game(path)
    try:
        with open(path) as fh:
            return load_game(fh.read(), name=path)
    except (OSError, GameParseError, GameValidationError) as exc:
        raise click.ClickException(str(exc))


def _print_plan(game: GameTree, player: str, plan: RealizationPlan) -> None:
    idx = game.sequences
    click.echo("player,seq,infoset,action,value")
    for s in range(idx.num_sequences(player)):
        iset, ai = idx.seqs[player][s] if s > 0 else (None, None)
        label = "" if s == 0 else game.infosets[iset].labels[ai]
        iname = "" if iset is None else iset
        click.echo(f"{player},{s},{iname},{label},{float(plan.values[s])!r}")


def _load_plan(game: GameTree, player: str, path: str) -> RealizationPlan:
    values = np.zeros(game.sequences.num_sequences(player))
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("player,seq"):
            raise click.ClickException(f"{path}: not a plan CSV")
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) < 5 or parts[0] != player:
                continue
            values[int(parts[1])] = float(parts[4])
    plan = RealizationPlan(player, values)
    bad = plan.check_flow(game)
    if bad:
        raise click.ClickException(f"{path}: not a realization plan: {bad[0]}")
    return plan


def _load_heuristic(game: GameTree, path: str) -> EvaluationFunction:
    values = np.zeros(len(game))
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("node,value"):
            raise click.ClickException(f"{path}: not a heuristic CSV")
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) >= 2:
                values[int(parts[0])] = float(parts[1])
    return EvaluationFunction(values, Provenance("custom"))


def _exact_heuristic(game: GameTree) -> EvaluationFunction:
    return make_heuristic_exact(game, solve_zero_sum(game))


@click.group()
def main():
    """Commitment solving against limited-lookahead opponents."""


@main.group()
def game():
    """Inspect and validate game files."""


@game.command("validate")
@click.argument("path")
def game_validate(path):
    g = _load(path)
    violations = validate(g)
    for v in violations:
        click.echo(str(v))
    if violations:
        sys.exit(1)
    click.echo("ok")


@game.command("stats")
@click.argument("path")
def game_stats(path):
    g = _load(path)
    idx = g.sequences
    leaves = len(g.leaves)
    click.echo(f"name: {g.name}")
    click.echo(f"nodes: {len(g)}")
    click.echo(f"leaves: {leaves}")
    for pl in ("r", "l"):
        click.echo(f"sequences[{pl}]: {idx.num_sequences(pl)}")
        click.echo(f"infosets[{pl}]: {len(list(g.infosets_of(pl)))}")


@main.group()
def opt():
    """Run the embedded LP/MIP solver."""


@opt.command("solve")
@click.argument("path")
def opt_solve(path):
    with open(path) as fh:
        problem = parse_lp(fh.read())
    sol = solve_mip(problem) if problem.num_binary else solve_lp(problem)
    click.echo(f"status: {sol.status}")
    if sol.x is not None:
        click.echo(f"objective: {sol.objective!r}")
        for j, name in enumerate(problem.var_names):
            click.echo(f"{name} = {sol.x[j]!r}")
    if sol.status == "Infeasible":
        sys.exit(1)


@main.command("equilibrium")
@click.argument("path")
def equilibrium_cmd(path):
    g = _load(path)
    profile = solve_zero_sum(g)
    click.echo(f"# game value (player r): {profile.game_value!r}")
    _print_plan(g, "r", profile.plan_r)
    idx = g.sequences
    for s in range(idx.num_sequences("l")):
        iset, ai = idx.seqs["l"][s] if s > 0 else (None, None)
        label = "" if s == 0 else g.infosets[iset].labels[ai]
        iname = "" if iset is None else iset
        click.echo(f"l,{s},{iname},{label},{float(profile.plan_l.values[s])!r}")


@main.command("heuristic")
@click.argument("path")
@click.option("--model", type=click.Choice(["exact", "ind", "cum"]),
              default="exact")
@click.option("--gamma", type=float, default=0.0)
@click.option("--seed", type=int, default=0)
def heuristic_cmd(path, model, gamma, seed):
    g = _load(path)
    h = _exact_heuristic(g)
    if model != "exact":
        name = INDEPENDENT if model == "ind" else CUMULATIVE
        h = make_heuristic_noisy(h, name, gamma, seed, game=g)
    click.echo("node,value")
    for nid in range(len(g)):
        click.echo(f"{nid},{h(nid)!r}")


@main.group()
def lookahead():
    """Inspect the limited-lookahead opponent model."""


@lookahead.command("inspect")
@click.argument("path")
@click.option("--k", type=int, default=1)
@click.option("--heuristic-file", default=None,
              help="node,value CSV; defaults to the exact heuristic")
@click.option("--plan-file", default=None,
              help="plan CSV for player r; defaults to uniform")
def lookahead_inspect(path, k, heuristic_file, plan_file):
    g = _load(path)
    h = (_load_heuristic(g, heuristic_file) if heuristic_file
         else _exact_heuristic(g))
    plan = (_load_plan(g, "r", plan_file) if plan_file
            else RealizationPlan.uniform(g, "r"))
    spec = LookaheadSpec(k, h)
    click.echo("infoset,action,label,frontier_value,optimal")
    for iset in g.infosets_of("l"):
        try:
            astar, _, values = optimal_actions(g, spec, plan, iset.id)
        except UnreachableInfoset:
            for ai in range(iset.num_actions):
                click.echo(f"{iset.id},{ai},{iset.labels[ai]},unreachable,")
            continue
        for ai in range(iset.num_actions):
            click.echo(f"{iset.id},{ai},{iset.labels[ai]},{float(values[ai])!r},"
                       f"{int(ai in astar)}")


@main.command("commit")
@click.argument("path")
@click.option("--tie", type=click.Choice(["fav", "static", "adv"]),
              default="adv")
@click.option("--k", type=int, default=1)
@click.option("--heuristic", "heuristic_path", default="exact",
              help="'exact' or a node,value CSV file")
@click.option("--oracle", is_flag=True,
              help="solve by exhaustive structure enumeration instead")
@click.option("--export-lp", "export_path", default=None,
              help="also dump the constructed model in LP text format")
def commit_cmd(path, tie, k, heuristic_path, oracle, export_path):
    g = _load(path)
    h = (_exact_heuristic(g) if heuristic_path == "exact"
         else _load_heuristic(g, heuristic_path))
    tie_break = {"fav": FAVORABLE, "adv": ADVERSARIAL,
                 "static": StaticOrder()}[tie]
    spec = LookaheadSpec(k, h, tie_break)
    try:
        if oracle:
            result = enumerate_structures_oracle(g, spec)
        elif tie == "fav":
            result = solve_favorable(g, spec)
        elif tie == "static":
            result = solve_static(g, spec)
        else:
            result = solve_adversarial(g, spec)
    except CommitmentError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"# value (player r): {result.value_r!r}")
    click.echo(f"# status: {result.status}")
    if result.duality_gap is not None:
        click.echo(f"# duality gap: {result.duality_gap!r}")
    if result.induced is not None:
        for iset_id in sorted(result.induced.astar):
            acts = result.induced.astar[iset_id]
            labels = g.infosets[iset_id].labels
            names = "|".join(labels[a] for a in acts)
            click.echo(f"# A*[{iset_id}]: {names}")
    _print_plan(g, "r", result.plan_r)
    if result.plan_l is not None:
        idx = g.sequences
        for s in range(idx.num_sequences("l")):
            iset, ai = idx.seqs["l"][s] if s > 0 else (None, None)
            label = "" if s == 0 else g.infosets[iset].labels[ai]
            iname = "" if iset is None else iset
            click.echo(f"l,{s},{iname},{label},{float(result.plan_l.values[s])!r}")
    if export_path:
        from .commitment import _build_adv_mip, _build_eq1_mip
        from .optim import export_lp
        if tie == "adv":
            problem = _build_adv_mip(g, spec)[0]
        else:
            problem = _build_eq1_mip(g, spec)[0]
        with open(export_path, "w") as fh:
            fh.write(export_lp(problem))


@main.group()
def gen():
    """Generate derived games."""


@gen.command("reduction")
@click.option("--theorem", type=click.Choice(["1", "2", "3"]), required=True)
@click.option("--cnf", "cnf_path", required=True,
              help="DIMACS CNF input file")
@click.option("--out", "out_path", required=True)
def gen_reduction(theorem, cnf_path, out_path):
    with open(cnf_path) as fh:
        try:
            cnf = reductions.parse_dimacs(fh.read())
        except ValueError as exc:
            raise click.ClickException(str(exc))
    gens = {"1": reductions.gadget_favorable,
            "2": reductions.gadget_lookahead2,
            "3": reductions.gadget_infosets}
    try:
        g, spec = gens[theorem](cnf)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    with open(out_path, "w") as fh:
        fh.write(save_game(g))
    click.echo(f"wrote {out_path}: {len(g)} nodes, lookahead {spec.depth}, "
               f"{spec.mode} ties")


@main.group()
def experiment():
    """Noise-sweep experiments."""


@experiment.command("run")
@click.option("--config", "config_path", required=True)
@click.option("--out", "out_path", required=True)
@click.option("--workers", type=int, default=1)
def experiment_run(config_path, out_path, workers):
    with open(config_path) as fh:
        try:
            grid = experiments.parse_config(fh.read())
        except (ValueError, AssertionError) as exc:
            raise click.ClickException(f"bad config: {exc}")
    import csv
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(experiments.ROW_FIELDS)

        def sink(row):
            writer.writerow(row.as_list())
            fh.flush()

        experiments.run_grid(grid, workers=workers, sink=sink)
    click.echo(f"wrote {out_path}")


@experiment.command("summarize")
@click.argument("rows_path")
@click.option("--out", "out_path", required=True)
def experiment_summarize(rows_path, out_path):
    with open(rows_path) as fh:
        try:
            rows = experiments.read_rows(fh)
        except ValueError as exc:
            raise click.ClickException(str(exc))
    with open(out_path, "w", newline="") as fh:
        experiments.write_summary(experiments.summarize(rows), fh)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
