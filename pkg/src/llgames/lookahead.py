"""The limited-lookahead opponent model.

Player l evaluates each candidate action at an information set I by looking
k moves ahead (Nature moves count), scoring the frontier nodes with her
evaluation function h under belief weights derived from everyone else's
play, and optimizing her own hypothetical choices inside the window.  The
set of maximizers A*_I is what she is willing to play.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .heuristics import EvaluationFunction
from .trees import GameTree, RealizationPlan

FAVORABLE = "favorable"
ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class StaticOrder:
    """Static tie-break: a fixed preference order over actions per infoset.

    ``orders[infoset]`` lists action indices from most to least preferred;
    infosets not listed use the natural action order.
    """

    orders: dict = field(default_factory=dict)

    def ranked(self, infoset: int, num_actions: int) -> list[int]:
        order = list(self.orders.get(infoset, range(num_actions)))
        assert sorted(order) == list(range(num_actions))
        return order


@dataclass(frozen=True)
class LookaheadSpec:
    depth: int
    evaluation: EvaluationFunction
    tie_break: object = ADVERSARIAL  # FAVORABLE | ADVERSARIAL | StaticOrder

    def __post_init__(self):
        assert self.depth >= 1

    @property
    def mode(self) -> str:
        if isinstance(self.tie_break, StaticOrder):
            return "static"
        assert self.tie_break in (FAVORABLE, ADVERSARIAL)
        return self.tie_break


class UnreachableInfoset(ValueError):
    """The belief at an infoset is undefined because pi_{-l}(I) = 0."""

    def __init__(self, infoset: int):
        super().__init__(f"infoset {infoset} unreachable under the given plan")
        self.infoset = infoset


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class FrontierEntry:
    source: int            # the node s in I this entry hangs below
    node: int              # frontier node s'
    path: tuple[int, ...]  # nodes from t_{s,a} down to s' inclusive
    factor: float          # product of Nature probs strictly inside the window
    choices: tuple[tuple[int, int], ...]  # Player-l (infoset, action) on path


@dataclass(frozen=True)
class Frontier:
    infoset: int
    action: int
    entries: tuple[FrontierEntry, ...]

    def choice_infosets(self) -> list[int]:
        """Player-l infosets with a decision inside this window, in order."""
        seen: list[int] = []
        for e in self.entries:
            for iset, _ in e.choices:
                if iset not in seen:
                    seen.append(iset)
        return seen


@dataclass(frozen=True)
class HypotheticalPlay:
    """Pure within-window play per top-level action: infoset -> action index."""

    per_action: dict


def build_frontier(game: GameTree, infoset: int, action: int, k: int) -> Frontier:
    """Nodes exactly k moves below (I, a), with early leaves included.

    A path that hits a leaf before depth k ends there and the leaf joins the
    frontier; otherwise the player would be blind to early terminal payoffs.
    """
    iset = game.infosets[infoset]
    entries = []
    for s in iset.nodes:
        start = game.child(s, action)
        stack = [(start, 1, (start,), 1.0, ())]
        while stack:
            nid, depth, path, factor, choices = stack.pop()
            node = game.nodes[nid]
            if depth >= k or node.is_leaf:
                entries.append(FrontierEntry(s, nid, path, factor, choices))
                continue
            for ai in reversed(range(len(node.actions))):
                a = node.actions[ai]
                nf = factor * (a.prob if node.owner == "c" else 1.0)
                nc = choices + (((node.infoset, ai),) if node.owner == "l"
                                else ())
                stack.append((a.child, depth + 1, path + (a.child,), nf, nc))
    return Frontier(infoset, action, tuple(entries))


def frontier_value(game: GameTree, frontier: Frontier, h: EvaluationFunction,
                   weights: np.ndarray, assignment: dict) -> float:
    """Score one action: sum over entries of weight(s') * h(s').

    ``weights`` is a per-node array of pi_{-l} from the root (Nature times
    Player r); ``assignment`` fixes the within-window Player-l choices.
    Entries whose choice chain disagrees with the assignment contribute 0.
    """
    total = 0.0
    for e in frontier.entries:
        if all(assignment[iset] == ai for iset, ai in e.choices):
            total += weights[e.node] * h(e.node)
    return total


def best_hypothetical(game: GameTree, frontier: Frontier,
                      h: EvaluationFunction, weights: np.ndarray):
    """Optimal pure within-window play, lexicographically first on ties.

    Returns (value, {infoset: action index}).  Enumerates all pure
    assignments over the window's Player-l infosets; windows are tiny (the
    lookahead depth bounds them) so this is cheap.
    """
    isets = frontier.choice_infosets()
    if not isets:
        return frontier_value(game, frontier, h, weights, {}), {}
    best = None
    best_assign = None
    sizes = [game.infosets[i].num_actions for i in isets]
    for combo in itertools.product(*(range(n) for n in sizes)):
        assign = dict(zip(isets, combo))
        val = frontier_value(game, frontier, h, weights, assign)
        if best is None or val > best + 1e-12:
            best, best_assign = val, assign
    return best, best_assign


def opponent_weights(game: GameTree, plan_r: RealizationPlan) -> np.ndarray:
    """pi_{-l}(s) from the root: Nature reach times Player r's plan."""
    idx = game.sequences
    return game.nature_reach * plan_r.values[idx.node_seq["r"]]


def optimal_actions(game: GameTree, spec: LookaheadSpec,
                    plan_r: RealizationPlan, infoset: int,
                    on_unreachable: str = "raise"):
    """A*_I and an optimal hypothetical play per action.

    Returns (astar, play, values): the maximizer action indices (ties kept),
    a HypotheticalPlay with one within-window assignment per action, and the
    per-action frontier scores.  Belief normalization is skipped; it cannot
    change the argmax when pi_{-l}(I) > 0.  When the infoset is unreachable
    the belief is undefined: raises UnreachableInfoset, or with
    ``on_unreachable='all'`` returns every action as vacuously optimal.
    """
    iset = game.infosets[infoset]
    weights = opponent_weights(game, plan_r)
    mass = sum(weights[s] for s in iset.nodes)
    if mass <= 0.0:
        if on_unreachable == "raise":
            raise UnreachableInfoset(infoset)
        plays = {}
        for ai in range(iset.num_actions):
            f = build_frontier(game, infoset, ai, spec.depth)
            plays[ai] = {i: 0 for i in f.choice_infosets()}
        return (list(range(iset.num_actions)), HypotheticalPlay(plays),
                [0.0] * iset.num_actions)

    values = []
    plays = {}
    for ai in range(iset.num_actions):
        f = build_frontier(game, infoset, ai, spec.depth)
        val, assign = best_hypothetical(game, f, spec.evaluation, weights)
        values.append(val)
        plays[ai] = assign
    top = max(values)
    astar = [ai for ai, v in enumerate(values) if v >= top - 1e-9]
    return astar, HypotheticalPlay(plays), values


def solve_singleton_lookahead1(game: GameTree, spec: LookaheadSpec):
    """Commitment solving for the easy case: k=1, singleton l-infosets.

    With depth 1 and singleton infosets, A*_s depends only on h, not on
    Player r's plan, so the induced game is fixed up front.  Static and
    favorable ties reduce to best responses against pure Player-l plans;
    adversarial ties restrict Player l to the A* sequences and solve the
    restricted zero-sum LP.  Returns (plan_l, plan_r, value_r).
    """
    from .equilibrium import best_response, zero_sum_lp
    from .optim import OPTIMAL, solve_lp

    if spec.depth != 1:
        raise PreconditionViolated("requires lookahead depth 1")
    idx = game.sequences
    for iset in game.infosets_of("l"):
        if len(iset.nodes) != 1:
            raise PreconditionViolated(
                f"infoset {iset.id} is not a singleton")

    h = spec.evaluation
    astar: dict[int, list[int]] = {}
    for iset in game.infosets_of("l"):
        s = iset.nodes[0]
        vals = [h(game.child(s, ai)) for ai in range(iset.num_actions)]
        top = max(vals)
        astar[iset.id] = [ai for ai, v in enumerate(vals) if v >= top - 1e-9]

    mode = spec.mode
    if mode == "static":
        choices = {i: min(a, key=spec.tie_break.ranked(
            i, game.infosets[i].num_actions).index)
            for i, a in astar.items()}
        plan_l = RealizationPlan.pure(game, "l", choices)
        plan_r, value = best_response(game, plan_l)
        return plan_l, plan_r, value

    if mode == FAVORABLE:
        isets = sorted(astar)
        best = None
        for combo in itertools.product(*(astar[i] for i in isets)):
            plan_l = RealizationPlan.pure(game, "l", dict(zip(isets, combo)))
            plan_r, value = best_response(game, plan_l)
            if best is None or value > best[2] + 1e-12:
                best = (plan_l, plan_r, value)
        return best

    # Adversarial: Player l confined to A* sequences, then plain zero-sum.
    allowed = np.zeros(idx.num_sequences("l"), dtype=bool)
    allowed[0] = True
    for iset_id, acts in astar.items():
        seqs = idx.action_seqs("l", iset_id)
        for ai in acts:
            allowed[seqs[ai]] = True
    p, x, rows = zero_sum_lp(game, allowed_l=allowed)
    sol = solve_lp(p)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"restricted zero-sum LP: {sol.status}")
    plan_r = RealizationPlan("r", sol.x[np.array(x)].copy())
    y = np.array([abs(sol.duals[r]) if r >= 0 else 0.0 for r in rows])
    y[0] = 1.0
    plan_l = RealizationPlan("l", y)
    return plan_l, plan_r, sol.objective + game.util_shift
