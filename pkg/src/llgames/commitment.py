"""Commitment solvers against a limited-lookahead opponent.

Player r commits to a realization plan x; Player l observes nothing but
plays only actions that maximize her k-step lookahead evaluation under x.
Ties are resolved favorably to r, by a fixed static order, or adversarially.
The solvers build LP/MIP models whose incentive rows force the claimed
optimal-action structure to actually be optimal under x:

- favorable/static: one MIP with binary realization variables y for l's pure
  plan and per-leaf payoff contributions r_z;
- adversarial: a MIP with exclusion binaries z over l's sequences picking
  the induced structure, and a fixed-structure LP whose dual recovers l's
  plan (with a verifiable duality gap);
- an exhaustive enumeration oracle over induced structures.

All models share two building blocks: the dominated-side value ``v^d``
(auxiliary variables whose row system forces them to upper-bound the value
of an action under *optimal* within-window hypothetical play) and the
chosen-side value (either a direct linear form in x when the window holds
no Player-l decisions, or boolean hypothetical-play variables with
per-frontier-entry values ``v^i``).
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .equilibrium import best_response, sequence_flow_rows
from .lookahead import (ADVERSARIAL, FAVORABLE, Frontier, LookaheadSpec,
                        StaticOrder, build_frontier, optimal_actions)
from .optim import (BINARY, EQ, GE, INFEASIBLE, LE, NODE_LIMIT, OPTIMAL,
                    OptProblem, OptSolution, solve_lp, solve_mip)
from .trees import GameTree, RealizationPlan, expected_utility

EPS_DEFAULT = 1e-6
ORACLE_CAP = 1_000_000


class CapExceeded(RuntimeError):
    pass


class CommitmentError(RuntimeError):
    pass


@dataclass(frozen=True)
class InducedStructure:
    """Player l's claimed optimal-action sets with hypothetical plays.

    ``astar`` maps each in-structure infoset to its optimal action indices;
    ``plays`` maps (infoset, action) to the pure within-window assignment
    {window infoset: action index} for that chosen action.
    """

    astar: dict
    plays: dict

    def key(self):
        return (tuple(sorted((i, tuple(a)) for i, a in self.astar.items())),
                tuple(sorted((k, tuple(sorted(v.items())))
                             for k, v in self.plays.items())))


@dataclass
class CommitmentResult:
    plan_r: RealizationPlan
    value_r: float
    tie_break: str
    induced: InducedStructure | None = None
    plan_l: RealizationPlan | None = None
    duality_gap: float | None = None
    status: str = OPTIMAL
    iterations: int = 0
    node_count: int = 0
    wall_time: float = 0.0


@dataclass
class Window:
    """Precomputed lookahead window below one (infoset, action) pair.

    ``coefs[e]`` is the (r-sequence, coefficient) pair of frontier entry e,
    with coefficient pi_0(s') * h(s'); ``chain_of`` maps each within-window
    Player-l infoset to the choice chain leading to it (perfect recall makes
    it unique), giving the forest used by the v^d recursion.
    """

    frontier: Frontier
    coefs: list[tuple[int, float]]
    chain_of: dict
    children: dict   # (iset, action) -> [child window infosets]
    direct: dict     # (iset, action) -> [entry indices ending right there]
    root_entries: list[int]
    root_infosets: list[int]
    bound: float     # upper bound on |window value| given x in [0,1]


def build_window(game: GameTree, h, infoset: int, action: int, k: int) -> Window:
    f = build_frontier(game, infoset, action, k)
    idx = game.sequences
    coefs = [(idx.node_seq["r"][e.node],
              game.nature_reach[e.node] * h(e.node)) for e in f.entries]
    chain_of: dict = {}
    children: dict = {}
    direct: dict = {}
    root_entries: list[int] = []
    root_infosets: list[int] = []
    for ei, e in enumerate(f.entries):
        prefix = ()
        for iset, ai in e.choices:
            if iset not in chain_of:
                chain_of[iset] = prefix
                if prefix:
                    children.setdefault(prefix[-1], []).append(iset)
                else:
                    root_infosets.append(iset)
            elif chain_of[iset] != prefix:
                raise CommitmentError(
                    f"infoset {iset} reached by two choice chains in window")
            prefix = prefix + ((iset, ai),)
        if e.choices:
            direct.setdefault(e.choices[-1], []).append(ei)
        else:
            root_entries.append(ei)
    bound = sum(abs(c) + (1.0 if f.entries[ei].choices else 0.0)
                for ei, (_, c) in enumerate(coefs))
    return Window(f, coefs, chain_of, children, direct,
                  root_entries, root_infosets, bound)


def build_windows(game: GameTree, h, k: int) -> dict:
    idx = game.sequences
    out = {}
    for iset_id in idx.infoset_order["l"]:
        iset = game.infosets[iset_id]
        for ai in range(iset.num_actions):
            out[(iset_id, ai)] = build_window(game, h, iset_id, ai, k)
    return out


def _acc(coeffs: dict, var: int, coef: float):
    if coef != 0.0:
        coeffs[var] = coeffs.get(var, 0.0) + coef


def _entry_coeffs(win: Window, entries, x, out: dict, sign: float = 1.0):
    for ei in entries:
        rseq, coef = win.coefs[ei]
        _acc(out, x[rseq], sign * coef)


def _vd_expr(p: OptProblem, game: GameTree, win: Window, x, cache, key):
    """Linear expression whose value is >= the window's optimal-play value.

    Returns a coefficient dict over problem variables.  For windows without
    Player-l decisions this is just the direct x form (exact, not a bound).
    """
    if not win.chain_of:
        out: dict = {}
        _entry_coeffs(win, range(len(win.frontier.entries)), x, out)
        return out
    if key in cache:
        return dict(cache[key])
    vd = {iset: p.add_var(f"vd_{key}_i{iset}", lb=-math.inf)
          for iset in win.chain_of}
    for iset in win.chain_of:
        for ai in range(game.infosets[iset].num_actions):
            row = {vd[iset]: 1.0}
            for child in win.children.get((iset, ai), []):
                _acc(row, vd[child], -1.0)
            _entry_coeffs(win, win.direct.get((iset, ai), []), x, row, -1.0)
            p.add_constraint(row, GE, 0.0, name=f"vd_{key}_i{iset}_a{ai}")
    expr: dict = {}
    _entry_coeffs(win, win.root_entries, x, expr)
    for iset in win.root_infosets:
        _acc(expr, vd[iset], 1.0)
    cache[key] = dict(expr)
    return expr


def _chosen_expr_mip(p: OptProblem, game: GameTree, win: Window, x, cache, key):
    """Chosen-side window value under solver-selected hypothetical play.

    Boolean play variables sigma pick one action per window infoset; each
    frontier entry behind choices gets a value variable v^i pinned to 0 when
    any choice on its chain is off and to its x form when all are on.
    Returns (expression dict, sigma variable map).
    """
    if not win.chain_of:
        out: dict = {}
        _entry_coeffs(win, range(len(win.frontier.entries)), x, out)
        return out, {}
    if key in cache:
        return dict(cache[key][0]), cache[key][1]
    sig = {}
    for iset in win.chain_of:
        acts = range(game.infosets[iset].num_actions)
        for ai in acts:
            sig[(iset, ai)] = p.add_var(f"sg_{key}_i{iset}_a{ai}", kind=BINARY)
        p.add_constraint({sig[(iset, ai)]: 1.0 for ai in acts}, EQ, 1.0,
                         name=f"sg1_{key}_i{iset}")
    expr: dict = {}
    _entry_coeffs(win, win.root_entries, x, expr)
    for ei, e in enumerate(win.frontier.entries):
        if not e.choices:
            continue
        rseq, coef = win.coefs[ei]
        v = p.add_var(f"vi_{key}_e{ei}", lb=-math.inf)
        m = abs(coef) + 1.0
        for c in e.choices:
            p.add_constraint({v: 1.0, sig[c]: -m}, LE, 0.0)
            p.add_constraint({v: 1.0, sig[c]: m}, GE, 0.0)
        row_hi = {v: 1.0}
        _acc(row_hi, x[rseq], -coef)
        row_lo = dict(row_hi)
        for c in e.choices:
            _acc(row_hi, sig[c], m)
            _acc(row_lo, sig[c], -m)
        span = m * len(e.choices)
        p.add_constraint(row_hi, LE, span)
        p.add_constraint(row_lo, GE, -span)
        _acc(expr, v, 1.0)
    cache[key] = (dict(expr), sig)
    return expr, sig


def _merge(a: dict, b: dict, sign: float = 1.0) -> dict:
    out = dict(a)
    for var, coef in b.items():
        _acc(out, var, sign * coef)
    return {v: c for v, c in out.items() if c != 0.0}


def _static_rank(spec: LookaheadSpec, infoset: int, num_actions: int):
    order = spec.tie_break.ranked(infoset, num_actions)
    return {a: r for r, a in enumerate(order)}


def _base_model(game: GameTree, name: str):
    """Fresh max-problem with r's realization variables and flow rows."""
    idx = game.sequences
    p = OptProblem(name, "max")
    x = [p.add_var(f"x{a}", ub=1.0) for a in range(idx.num_sequences("r"))]
    sequence_flow_rows(p, game, "r", lambda s: x[s])
    return p, x


def _build_eq1_mip(game: GameTree, spec: LookaheadSpec):
    """The favorable/static MIP: binary pure plan y for l, leaf payoffs r_z.

    Incentive rows per (infoset, played action a, alternative a'):
    chosen(a) >= v^d_top(a') - M(1 - y_a), strict (by eps) for static pairs
    where a' is preferred over a in the tie-break order.
    """
    idx = game.sequences
    h = spec.evaluation
    static = spec.mode == "static"
    p, x = _base_model(game, f"eq1_{game.name}")
    y = [p.add_var(f"y{a}", kind=BINARY)
         for a in range(idx.num_sequences("l"))]
    sequence_flow_rows(p, game, "l", lambda s: y[s])

    for z in game.leaves:
        n = game.nodes[z]
        coef = game.nature_reach[z] * n.u_r
        rz = p.add_var(f"r{z}", obj=1.0)
        p.add_constraint({rz: 1.0, x[idx.node_seq["r"][z]]: -coef}, LE, 0.0)
        p.add_constraint({rz: 1.0, y[idx.node_seq["l"][z]]: -coef}, LE, 0.0)

    windows = build_windows(game, h, spec.depth)
    vd_cache: dict = {}
    ch_cache: dict = {}
    for iset_id in idx.infoset_order["l"]:
        iset = game.infosets[iset_id]
        seqs = idx.action_seqs("l", iset_id)
        rank = _static_rank(spec, iset_id, iset.num_actions) if static else None
        for a in range(iset.num_actions):
            win_a = windows[(iset_id, a)]
            chosen, _ = _chosen_expr_mip(p, game, win_a, x, ch_cache,
                                         f"I{iset_id}a{a}")
            for a2 in range(iset.num_actions):
                if a2 == a and not win_a.chain_of:
                    continue  # self row is 0 >= 0 for choice-free windows
                win_b = windows[(iset_id, a2)]
                vtop = _vd_expr(p, game, win_b, x, vd_cache,
                                f"I{iset_id}a{a2}")
                strict = static and a2 != a and rank[a2] < rank[a]
                big_m = win_a.bound + win_b.bound + 1.0
                row = _merge(chosen, vtop, -1.0)
                _acc(row, y[seqs[a]], -big_m)
                p.add_constraint(row, GE, -big_m, strict=strict,
                                 name=f"inc_I{iset_id}_a{a}_vs{a2}")
    return p, x, y


def _plan_l_from_binaries(game: GameTree, values, seq_vars) -> RealizationPlan:
    """Pure Player-l plan read off binary realization values."""
    idx = game.sequences
    choices = {}
    for iset_id in idx.infoset_order["l"]:
        seqs = idx.action_seqs("l", iset_id)
        pick = int(np.argmax([values[seq_vars[s]] for s in seqs]))
        choices[iset_id] = pick
    return RealizationPlan.pure(game, "l", choices)


def _induced_from_plan(game: GameTree, spec: LookaheadSpec,
                       plan_r: RealizationPlan) -> InducedStructure:
    astar = {}
    plays = {}
    for iset in game.infosets_of("l"):
        acts, play, _ = optimal_actions(game, spec, plan_r, iset.id,
                                        on_unreachable="all")
        astar[iset.id] = tuple(acts)
        for ai in acts:
            plays[(iset.id, ai)] = dict(play.per_action.get(ai, {}))
    return InducedStructure(astar, plays)


def _solve_pure_plan_mip(game: GameTree, spec: LookaheadSpec, eps: float,
                         node_limit: int) -> CommitmentResult:
    t0 = time.perf_counter()
    p, x, y = _build_eq1_mip(game, spec)
    sol = solve_mip(p, node_limit=node_limit, eps_strict=eps)
    if sol.x is None:
        raise CommitmentError(f"tie-break MIP ended {sol.status}; "
                              "valid games always admit some pure plan")
    plan_r = RealizationPlan("r", sol.x[np.array(x)].copy())
    plan_l = _plan_l_from_binaries(game, sol.x, y)
    value = sol.objective + game.util_shift
    return CommitmentResult(plan_r, value, spec.mode,
                            induced=_induced_from_plan(game, spec, plan_r),
                            plan_l=plan_l, status=sol.status,
                            iterations=sol.iterations,
                            node_count=sol.node_count,
                            wall_time=time.perf_counter() - t0)


def solve_favorable(game: GameTree, spec: LookaheadSpec,
                    eps: float = EPS_DEFAULT,
                    node_limit: int = 1_000_000) -> CommitmentResult:
    """Best commitment value when l breaks lookahead ties in r's favor."""
    if spec.mode != FAVORABLE:
        raise CommitmentError("spec.tie_break must be Favorable")
    return _solve_pure_plan_mip(game, spec, eps, node_limit)


def solve_static(game: GameTree, spec: LookaheadSpec,
                 eps: float = EPS_DEFAULT,
                 node_limit: int = 1_000_000) -> CommitmentResult:
    """Commitment value when l breaks ties by a fixed per-infoset order."""
    if spec.mode != "static":
        raise CommitmentError("spec.tie_break must be a StaticOrder")
    return _solve_pure_plan_mip(game, spec, eps, node_limit)


def _retained_sequences(game: GameTree, induced: InducedStructure):
    """Set of l-sequence ids consistent with the structure (incl. empty)."""
    idx = game.sequences
    retained = {0}
    isets = []
    for iset_id in idx.infoset_order["l"]:
        if idx.infoset_parent_seq[iset_id] not in retained:
            continue
        if iset_id not in induced.astar or not induced.astar[iset_id]:
            raise CommitmentError(
                f"structure misses reachable infoset {iset_id}")
        isets.append(iset_id)
        seqs = idx.action_seqs("l", iset_id)
        for ai in induced.astar[iset_id]:
            retained.add(seqs[ai])
    return retained, isets


def solve_fixed_structure(game: GameTree, spec: LookaheadSpec,
                          induced: InducedStructure,
                          eps: float = EPS_DEFAULT):
    """Best commitment given a fixed induced structure, adversarial ties.

    Solves: maximize r's worst-case value with l confined to the structure's
    sequences (dual value variables q), subject to incentive rows making
    every in-structure action optimal (to within ties) and every excluded
    action strictly dominated by eps.  Player l's plan comes out of the
    duals of the per-sequence rows; the reported duality_gap is the honest
    |primal - dual| of the LP.

    Returns (plan_r, plan_l, value_r, duality_gap), or None when the
    structure cannot be induced by any x (the LP is infeasible).
    """
    idx = game.sequences
    h = spec.evaluation
    retained, isets = _retained_sequences(game, induced)
    p, x = _base_model(game, f"fixed_{game.name}")
    q_root = p.add_var("q_root", lb=-math.inf, obj=1.0)
    q = {i: p.add_var(f"q_i{i}", lb=-math.inf) for i in isets}

    # x^T A columns: per l-sequence, the r-sequence-weighted payoffs.
    cols: dict = {a: {} for a in retained}
    for z in game.leaves:
        a = idx.node_seq["l"][z]
        if a in cols:
            coef = game.nature_reach[z] * game.nodes[z].u_r
            if coef != 0.0:
                rs = idx.node_seq["r"][z]
                cols[a][rs] = cols[a].get(rs, 0.0) + coef

    dual_rows = {}
    for a in sorted(retained):
        head = q_root if a == 0 else q[idx.seqs["l"][a][0]]
        row = {head: 1.0}
        for child in idx.seq_children["l"][a]:
            if child in q:
                _acc(row, q[child], -1.0)
        for rs, coef in cols[a].items():
            _acc(row, x[rs], -coef)
        dual_rows[a] = len(p.constraints)
        p.add_constraint(row, LE, 0.0, name=f"dual_l{a}")

    windows = build_windows(game, h, spec.depth)
    vd_cache: dict = {}
    for iset_id in isets:
        iset = game.infosets[iset_id]
        active = list(induced.astar[iset_id])
        excluded = [ai for ai in range(iset.num_actions) if ai not in active]
        chosen = {}
        for ai in active:
            expr: dict = {}
            win = windows[(iset_id, ai)]
            assign = induced.plays.get((iset_id, ai), {})
            for ei, e in enumerate(win.frontier.entries):
                if all(assign.get(ci, -1) == ca for ci, ca in e.choices):
                    rs, coef = win.coefs[ei]
                    _acc(expr, x[rs], coef)
            chosen[ai] = expr
            if win.chain_of:  # chosen play must itself be optimal
                vtop = _vd_expr(p, game, win, x, vd_cache,
                                f"I{iset_id}a{ai}")
                p.add_constraint(_merge(expr, vtop, -1.0), GE, 0.0,
                                 name=f"self_I{iset_id}_a{ai}")
        for ai in active:
            for a2 in excluded:
                vtop = _vd_expr(p, game, windows[(iset_id, a2)], x,
                                vd_cache, f"I{iset_id}a{a2}")
                p.add_constraint(_merge(chosen[ai], vtop, -1.0), GE, 0.0,
                                 strict=True,
                                 name=f"H_I{iset_id}_a{ai}_vs{a2}")
        for ai, a2 in itertools.combinations(active, 2):
            p.add_constraint(_merge(chosen[ai], chosen[a2], -1.0), EQ, 0.0,
                             name=f"G_I{iset_id}_a{ai}_eq{a2}")

    sol = solve_lp(p, eps_strict=eps)
    if sol.status != OPTIMAL:
        return None
    plan_r = RealizationPlan("r", sol.x[np.array(x)].copy())
    y = np.zeros(idx.num_sequences("l"))
    y[0] = 1.0
    for a, row in dual_rows.items():
        if a != 0:
            y[a] = abs(sol.duals[row])
    plan_l = RealizationPlan("l", y)
    gap = abs(sol.objective - sol.dual_objective)
    return plan_r, plan_l, sol.objective + game.util_shift, gap


def _build_adv_mip(game: GameTree, spec: LookaheadSpec):
    """The adversarial MIP: exclusion binaries z over l's sequences.

    z_a = 1 marks sequence a as not part of the induced structure.  The q
    variables price l's best response inside the retained set via relaxable
    dual-feasibility rows; incentive rows activate exactly for (retained,
    excluded) and (retained, retained) pairs.  The objective is r's
    worst-case value q_root.
    """
    idx = game.sequences
    h = spec.evaluation
    p, x = _base_model(game, f"adv_{game.name}")
    # Every q prices a best response below one infoset in absolute scale
    # (Nature reach above the infoset times x <= 1 times payoffs).  With
    # shift-normalized utilities the payoffs are nonnegative, so each q is
    # bounded by the infoset's chance mass times the largest leaf payoff.
    # Tight per-infoset bounds matter: they are also the exact big-M for the
    # relaxable dual rows, and loose ones leave the LP relaxation too slack
    # to prune anything.
    max_u = float(max(game.nodes[z].u_r for z in game.leaves))
    q_ub = {i: max_u * float(sum(game.nature_reach[s]
                                 for s in game.infosets[i].nodes))
            for i in idx.infoset_order["l"]}
    q_root = p.add_var("q_root", lb=0.0, ub=max_u, obj=1.0)
    q = {i: p.add_var(f"q_i{i}", lb=0.0, ub=q_ub[i])
         for i in idx.infoset_order["l"]}
    nl = idx.num_sequences("l")
    z = [None] + [p.add_var(f"z{a}", kind=BINARY) for a in range(1, nl)]

    # Sequence consistency of the exclusions: a retained parent keeps at
    # least one child action retained, an excluded parent excludes all.
    for iset_id in idx.infoset_order["l"]:
        seqs = idx.action_seqs("l", iset_id)
        parent = idx.infoset_parent_seq[iset_id]
        row = {z[a]: 1.0 for a in seqs}
        if parent != 0:
            _acc(row, z[parent], -1.0)
        p.add_constraint(row, LE, float(len(seqs) - 1),
                         name=f"zflow_i{iset_id}")
        if parent != 0:
            for a in seqs:
                p.add_constraint({z[a]: 1.0, z[parent]: -1.0}, GE, 0.0)

    cols: list[dict] = [{} for _ in range(nl)]
    for leaf in game.leaves:
        a = idx.node_seq["l"][leaf]
        coef = game.nature_reach[leaf] * game.nodes[leaf].u_r
        if coef != 0.0:
            rs = idx.node_seq["r"][leaf]
            cols[a][rs] = cols[a].get(rs, 0.0) + coef
    for a in range(nl):
        head = q_root if a == 0 else q[idx.seqs["l"][a][0]]
        row = {head: 1.0}
        children = idx.seq_children["l"][a]
        for child in children:
            _acc(row, q[child], -1.0)
        for rs, coef in cols[a].items():
            _acc(row, x[rs], -coef)
        if a != 0:
            # With q >= 0 and x, payoff coefficients >= 0, the row's LHS is
            # at most the head's upper bound, so that M deactivates it
            # exactly without loosening the relaxation.
            _acc(row, z[a], -q_ub[idx.seqs["l"][a][0]])
        p.add_constraint(row, LE, 0.0, name=f"dual_l{a}")

    windows = build_windows(game, h, spec.depth)
    vd_cache: dict = {}
    ch_cache: dict = {}
    for iset_id in idx.infoset_order["l"]:
        iset = game.infosets[iset_id]
        seqs = idx.action_seqs("l", iset_id)
        chosen = {}
        for a in range(iset.num_actions):
            win = windows[(iset_id, a)]
            chosen[a], _ = _chosen_expr_mip(p, game, win, x, ch_cache,
                                            f"I{iset_id}a{a}")
            if win.chain_of:
                vtop = _vd_expr(p, game, win, x, vd_cache, f"I{iset_id}a{a}")
                row = _merge(chosen[a], vtop, -1.0)
                big_m = 2.0 * win.bound + 1.0
                _acc(row, z[seqs[a]], big_m)
                p.add_constraint(row, GE, 0.0, name=f"self_I{iset_id}_a{a}")
        for a in range(iset.num_actions):
            win_a = windows[(iset_id, a)]
            for a2 in range(iset.num_actions):
                if a2 == a:
                    continue
                win_b = windows[(iset_id, a2)]
                big_m = win_a.bound + win_b.bound + 1.0
                vtop = _vd_expr(p, game, win_b, x, vd_cache,
                                f"I{iset_id}a{a2}")
                row = _merge(chosen[a], vtop, -1.0)
                _acc(row, z[seqs[a]], big_m)
                _acc(row, z[seqs[a2]], -big_m)
                p.add_constraint(row, GE, -big_m, strict=True,
                                 name=f"H_I{iset_id}_a{a}_vs{a2}")
                if a2 > a:
                    both = _merge(chosen[a], chosen[a2], -1.0)
                    hi = dict(both)
                    _acc(hi, z[seqs[a]], big_m)
                    _acc(hi, z[seqs[a2]], big_m)
                    p.add_constraint(hi, GE, 0.0,
                                     name=f"G_I{iset_id}_a{a}_ge{a2}")
                    lo = dict(both)
                    _acc(lo, z[seqs[a]], -big_m)
                    _acc(lo, z[seqs[a2]], -big_m)
                    p.add_constraint(lo, LE, 0.0,
                                     name=f"G_I{iset_id}_a{a}_le{a2}")
    return p, x, z, ch_cache


def _structure_from_mip(game: GameTree, sol_x, z, ch_cache) -> InducedStructure:
    idx = game.sequences
    astar = {}
    plays = {}
    retained = {0}
    for iset_id in idx.infoset_order["l"]:
        if idx.infoset_parent_seq[iset_id] not in retained:
            continue
        seqs = idx.action_seqs("l", iset_id)
        acts = [ai for ai, s in enumerate(seqs) if sol_x[z[s]] < 0.5]
        astar[iset_id] = tuple(acts)
        for ai in acts:
            retained.add(seqs[ai])
            key = f"I{iset_id}a{ai}"
            assign = {}
            if key in ch_cache:
                sig = ch_cache[key][1]
                by_iset: dict = {}
                for (wi, wa), var in sig.items():
                    by_iset.setdefault(wi, []).append((wa, sol_x[var]))
                for wi, pairs in by_iset.items():
                    assign[wi] = max(pairs, key=lambda t: t[1])[0]
            plays[(iset_id, ai)] = assign
    return InducedStructure(astar, plays)


def solve_adversarial(game: GameTree, spec: LookaheadSpec,
                      eps: float = EPS_DEFAULT,
                      node_limit: int = 1_000_000) -> CommitmentResult:
    """Best commitment value when l breaks lookahead ties against r.

    Solves the structure-picking MIP, then re-solves the winning structure
    with the fixed-structure LP to recover l's plan and a duality gap.
    """
    if spec.mode != ADVERSARIAL:
        raise CommitmentError("spec.tie_break must be Adversarial")
    t0 = time.perf_counter()
    p, x, z, ch_cache = _build_adv_mip(game, spec)
    sol = solve_mip(p, node_limit=node_limit, eps_strict=eps)
    if sol.x is None:
        raise CommitmentError(f"adversarial MIP ended {sol.status} "
                              "with no incumbent")
    induced = _structure_from_mip(game, sol.x, z, ch_cache)
    fixed = solve_fixed_structure(game, spec, induced, eps)
    if fixed is None:
        # The incumbent's structure can be inducible only with a margin
        # smaller than eps (strictly positive, but thin).  The MIP admits
        # such points through tolerance slack in its big-M rows; they are
        # legitimate under the true strict-inequality semantics, so re-solve
        # the recovery LP with a much smaller separation constant.  The
        # value moves by O(eps) at most.
        fixed = solve_fixed_structure(game, spec, induced, eps * 1e-3)
    if fixed is None:
        raise CommitmentError("MIP incumbent structure not inducible; "
                              "big-M or eps too loose")
    plan_r, plan_l, value, gap = fixed
    return CommitmentResult(plan_r, value, ADVERSARIAL, induced=induced,
                            plan_l=plan_l, duality_gap=gap,
                            status=sol.status, iterations=sol.iterations,
                            node_count=sol.node_count,
                            wall_time=time.perf_counter() - t0)


def _subsets_lex(n: int):
    out = []
    for size in range(1, n + 1):
        out.extend(itertools.combinations(range(n), size))
    return sorted(out)


def enumerate_structures_oracle(game: GameTree, spec: LookaheadSpec,
                                eps: float = EPS_DEFAULT,
                                cap: int = ORACLE_CAP,
                                gap_sink: list | None = None) -> CommitmentResult:
    """Ground truth for solve_adversarial by exhaustive enumeration.

    Walks every sequence-consistent induced structure (action subsets in
    lexicographic order, then hypothetical-play assignments), solves the
    fixed-structure LP for each, skips infeasible ones, and keeps the first
    best value.  ``gap_sink`` collects the duality gap of every feasible
    structure.  Raises CapExceeded past ``cap`` solved structures.
    """
    idx = game.sequences
    windows = build_windows(game, spec.evaluation, spec.depth)
    order = idx.infoset_order["l"]
    best: CommitmentResult | None = None
    count = 0

    def assignments(iset_id, acts):
        """All joint play assignments for the chosen actions, lex order."""
        slots = []
        for ai in acts:
            win = windows[(iset_id, ai)]
            for wi in win.chain_of:
                slots.append((ai, wi, game.infosets[wi].num_actions))
        if not slots:
            return [{}]
        out = []
        for combo in itertools.product(*(range(n) for _, _, n in slots)):
            per: dict = {}
            for (ai, wi, _), wa in zip(slots, combo):
                per.setdefault(ai, {})[wi] = wa
            out.append(per)
        return out

    def recurse(pos, retained, astar, plays):
        nonlocal best, count
        if pos == len(order):
            count += 1
            if count > cap:
                raise CapExceeded(f"more than {cap} structures")
            induced = InducedStructure(dict(astar), dict(plays))
            out = solve_fixed_structure(game, spec, induced, eps)
            if out is not None:
                plan_r, plan_l, value, gap = out
                if gap_sink is not None:
                    gap_sink.append(gap)
                if best is None or value > best.value_r + 1e-9:
                    best = CommitmentResult(plan_r, value, ADVERSARIAL,
                                            induced=induced, plan_l=plan_l,
                                            duality_gap=gap)
            return
        iset_id = order[pos]
        if idx.infoset_parent_seq[iset_id] not in retained:
            recurse(pos + 1, retained, astar, plays)
            return
        seqs = idx.action_seqs("l", iset_id)
        num = game.infosets[iset_id].num_actions
        for subset in _subsets_lex(num):
            for per in assignments(iset_id, subset):
                astar[iset_id] = subset
                for ai in subset:
                    plays[(iset_id, ai)] = per.get(ai, {})
                recurse(pos + 1, retained | {seqs[ai] for ai in subset},
                        astar, plays)
                for ai in subset:
                    del plays[(iset_id, ai)]
                del astar[iset_id]

    recurse(0, {0}, {}, {})
    if best is None:
        raise CommitmentError("no inducible structure found")
    return best


SIZE_BOUND_NODE_COEF = 40


def mip_size_term(game: GameTree, k: int) -> int:
    """The branching term: sum over l-infosets of |A_I| * b^min(k, k'_I).

    b is the largest branching factor in the tree and k'_I the depth of the
    deepest subtree under I.
    """
    branch = max((len(n.actions) for n in game.nodes if not n.is_leaf),
                 default=0)
    total = 0
    for iset in game.infosets_of("l"):
        depth_i = max(game.subtree_depth(s) for s in iset.nodes)
        total += iset.num_actions * branch ** min(k, depth_i)
    return total


def mip_size_bound(game: GameTree, k: int) -> int:
    """Sparse-entry budget for the commitment MIPs: branching term plus a
    fixed multiple of the node count (sequence-form rows, payoff caps,
    exclusion bookkeeping are all linear in the tree size)."""
    return mip_size_term(game, k) + SIZE_BOUND_NODE_COEF * len(game)


def mip_nonzeros(game: GameTree, k: int) -> dict:
    """Constraint-matrix nonzeros of both MIPs under a generic evaluation."""
    from .heuristics import EvaluationFunction, Provenance
    h = EvaluationFunction(np.ones(len(game)), Provenance("custom"))
    eq1, _, _ = _build_eq1_mip(game, LookaheadSpec(k, h, FAVORABLE))
    adv, _, _, _ = _build_adv_mip(game, LookaheadSpec(k, h, ADVERSARIAL))
    return {"eq1": eq1.num_nonzeros(), "adversarial": adv.num_nonzeros()}
