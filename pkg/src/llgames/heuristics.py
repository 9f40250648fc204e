"""Node-evaluation functions for the limited-lookahead player.

The exact heuristic assigns every node its expected utility for Player l
under a fixed equilibrium profile; the two noise models perturb it with
Gaussian noise, either independently per node or accumulated top-down with
exact leaves.  All values are in the original (un-shifted) payoff scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import Rng
from .trees import GameTree, RealizationPlan

INDEPENDENT = "independent"
CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class Provenance:
    kind: str  # 'exact' | 'independent' | 'cumulative' | 'custom'
    gamma: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class EvaluationFunction:
    """Immutable per-node evaluation h(s).

    ``edge_probs`` holds the action distribution at each internal node under
    the profile used to build the function (Nature keeps its own outcome
    probabilities); it is carried along so cumulative noise can re-run the
    expectation recursion.
    """

    values: np.ndarray
    provenance: Provenance
    edge_probs: tuple[tuple[float, ...] | None, ...] = ()

    def __call__(self, node_id: int) -> float:
        return float(self.values[node_id])


def profile_edge_probs(game: GameTree, plan_r: RealizationPlan,
                       plan_l: RealizationPlan) -> list[tuple[float, ...] | None]:
    """Per-node action distributions; uniform at unreachable infosets."""
    plans = {"r": plan_r, "l": plan_l}
    out: list[tuple[float, ...] | None] = [None] * len(game)
    for n in game.nodes:
        if n.is_leaf:
            continue
        if n.owner == "c":
            out[n.id] = tuple(a.prob or 0.0 for a in n.actions)
        else:
            probs = [plans[n.owner].behavioral(game, n.infoset, ai)
                     for ai in range(len(n.actions))]
            if sum(probs) <= 0.0:
                probs = [1.0 / len(n.actions)] * len(n.actions)
            out[n.id] = tuple(probs)
    return out


def make_heuristic_exact(game: GameTree, profile) -> EvaluationFunction:
    """Expected utility of each node for Player l under the profile.

    ``profile`` needs ``plan_r``/``plan_l`` attributes (an EquilibriumProfile
    fits).  One bottom-up pass; leaves get their raw u_l.
    """
    edges = profile_edge_probs(game, profile.plan_r, profile.plan_l)
    values = np.zeros(len(game))
    for n in reversed(game.nodes):
        if n.is_leaf:
            values[n.id] = n.u_l + game.util_shift
        else:
            values[n.id] = sum(p * values[a.child]
                               for p, a in zip(edges[n.id], n.actions))
    return EvaluationFunction(values, Provenance("exact"),
                              tuple(edges))


def make_heuristic_noisy(base: EvaluationFunction, model: str, gamma: float,
                         seed: int, game: GameTree | None = None) -> EvaluationFunction:
    """Add Gaussian noise (std gamma) to a base evaluation.

    ``independent`` perturbs every node value i.i.d.  ``cumulative`` keeps
    leaves exact and re-runs the expectation recursion adding one noise term
    per internal node, so errors compound toward the root; it needs ``game``
    and a base that carries ``edge_probs``.  Deterministic for a fixed seed.
    """
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    rng = Rng(seed)
    if model == INDEPENDENT:
        noise = np.array([gamma * rng.normal() for _ in base.values])
        return EvaluationFunction(base.values + noise,
                                  Provenance(INDEPENDENT, gamma, seed),
                                  base.edge_probs)
    if model == CUMULATIVE:
        if game is None or not base.edge_probs:
            raise ValueError("cumulative noise needs the game and edge_probs")
        noise = [gamma * rng.normal() for _ in range(len(game))]
        values = np.zeros(len(game))
        for n in reversed(game.nodes):
            if n.is_leaf:
                values[n.id] = base.values[n.id]
            else:
                values[n.id] = noise[n.id] + sum(
                    p * values[a.child]
                    for p, a in zip(base.edge_probs[n.id], n.actions))
        return EvaluationFunction(values, Provenance(CUMULATIVE, gamma, seed),
                                  base.edge_probs)
    raise ValueError(f"unknown noise model {model!r}")
