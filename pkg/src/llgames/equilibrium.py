"""Zero-sum sequence-form equilibrium solving and best responses."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .optim import GE, LE, EQ, OPTIMAL, OptProblem, solve_lp
from .trees import (GameTree, RealizationPlan, expected_utility, payoff_matrix)


class NotZeroSum(ValueError):
    pass


@dataclass
class EquilibriumProfile:
    plan_r: RealizationPlan
    plan_l: RealizationPlan
    game_value: float  # expected utility to Player r, original payoff scale


def sequence_flow_rows(problem: OptProblem, game: GameTree, player: str,
                       var_of, rel: str = EQ):
    """Add the realization-plan flow rows x_empty = 1, sum(x_a) = x_parent.

    ``var_of(seq)`` maps a sequence id to a problem variable.  Returns the
    constraint indices added (one per row, root row first).
    """
    idx = game.sequences
    first = len(problem.constraints)
    problem.add_constraint([(var_of(0), 1.0)], rel, 1.0,
                           name=f"flow_{player}_root")
    for iset in idx.infoset_order[player]:
        coeffs = [(var_of(s), 1.0) for s in idx.action_seqs(player, iset)]
        coeffs.append((var_of(idx.infoset_parent_seq[iset]), -1.0))
        problem.add_constraint(coeffs, rel, 0.0, name=f"flow_{player}_i{iset}")
    return list(range(first, len(problem.constraints)))


def zero_sum_lp(game: GameTree, payoff: np.ndarray | None = None,
                allowed_l: np.ndarray | None = None):
    """Build the sequence-form LP: max_x min_y x'Ay.

    Variables are Player r's realization weights x plus one value variable
    per Player-l information set (and the root).  ``allowed_l`` optionally
    masks Player-l sequences (False columns get no dual-feasibility row),
    which solves the game where l is restricted to the allowed sequences.
    Returns (problem, x var ids, list of per-l-sequence constraint indices).
    """
    idx = game.sequences
    if payoff is None:
        payoff = payoff_matrix(game, "r")
    nl = idx.num_sequences("l")
    if allowed_l is None:
        allowed_l = np.ones(nl, dtype=bool)

    p = OptProblem(f"zerosum_{game.name}", "max")
    x = [p.add_var(f"x{a}") for a in range(idx.num_sequences("r"))]
    q_root = p.add_var("q_root", lb=-np.inf, obj=1.0)
    q = {iset: p.add_var(f"q_i{iset}", lb=-np.inf)
         for iset in idx.infoset_order["l"]}

    def head(seq):
        return q_root if seq == 0 else q[idx.seqs["l"][seq][0]]

    rows = [-1] * nl
    for a in range(nl):
        if not allowed_l[a]:
            continue
        coeffs = {head(a): 1.0}
        for child in idx.seq_children["l"][a]:
            if any(allowed_l[s] for s in idx.action_seqs("l", child)):
                coeffs[q[child]] = coeffs.get(q[child], 0.0) - 1.0
        for ri, coef in enumerate(payoff[:, a]):
            if coef != 0.0:
                coeffs[x[ri]] = coeffs.get(x[ri], 0.0) - coef
        rows[a] = len(p.constraints)
        p.add_constraint(coeffs, LE, 0.0, name=f"br_l_{a}")
    sequence_flow_rows(p, game, "r", lambda s: x[s])
    return p, x, rows


def solve_zero_sum(game: GameTree, tol: float = 1e-9) -> EquilibriumProfile:
    """Equilibrium of a zero-sum game by the sequence-form LP."""
    if not game.is_zero_sum(tol):
        raise NotZeroSum(f"game {game.name} is not zero-sum")
    p, x, rows = zero_sum_lp(game)
    sol = solve_lp(p)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"zero-sum LP not optimal: {sol.status}")
    plan_r = RealizationPlan("r", sol.x[np.array(x)].copy())
    y = np.array([sol.duals[r] if r >= 0 else 0.0 for r in rows])
    plan_l = RealizationPlan("l", np.abs(y))
    return EquilibriumProfile(plan_r, plan_l,
                              sol.objective + game.util_shift)


def best_response(game: GameTree, opponent_plan: RealizationPlan):
    """Pure best response to an opponent realization plan.

    Returns ``(plan, value)``: the responder is the player opposite
    ``opponent_plan.owner`` and ``value`` is the responder's expected utility
    in the original payoff scale.
    """
    responder = "l" if opponent_plan.owner == "r" else "r"
    idx = game.sequences
    opp = opponent_plan.values[idx.node_seq[opponent_plan.owner]]
    weight = game.nature_reach * opp  # pi of everyone but the responder

    choices: dict[int, int] = {}
    memo: dict[int, float] = {}

    def subtree(nid: int) -> float:
        """Weighted subtree value with responder playing the decided choices."""
        if nid in memo:
            return memo[nid]
        n = game.nodes[nid]
        if n.is_leaf:
            out = weight[nid] * (n.u_r if responder == "r" else n.u_l)
        elif n.owner == responder:
            out = subtree(game.child(nid, choices[n.infoset]))
        else:
            out = sum(subtree(a.child) for a in n.actions)
        memo[nid] = out
        return out

    # Reverse first-seen order visits an infoset only after every responder
    # infoset below it, so `choices` is always decided before it is read.
    for iset_id in reversed(idx.infoset_order[responder]):
        iset = game.infosets[iset_id]
        totals = [sum(subtree(game.child(s, ai)) for s in iset.nodes)
                  for ai in range(iset.num_actions)]
        choices[iset_id] = int(np.argmax(totals))
        for s in iset.nodes:
            memo.pop(s, None)

    plan = RealizationPlan.pure(game, responder, choices)
    return plan, subtree(game.root) + game.util_shift


def exploitability(game: GameTree, profile: EquilibriumProfile) -> float:
    """Max gain of either player from best-responding to the profile."""
    _, br_r = best_response(game, profile.plan_l)
    _, br_l = best_response(game, profile.plan_r)
    value_l = expected_utility(game, profile.plan_r, profile.plan_l, "l")
    return max(br_r - profile.game_value, br_l - value_l)
