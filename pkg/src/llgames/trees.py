"""Two-player (plus Nature) perfect-recall extensive-form game trees.

Players are labelled ``'r'`` (the rational, committing player), ``'l'`` (the
limited-lookahead player) and ``'c'`` (Nature/chance).  Leaf utilities are
shifted at construction time so that all stored payoffs are non-negative; the
shift is recorded in ``GameTree.util_shift`` so reported values can be
un-shifted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PLAYERS = ("r", "l")
NATURE_TOL = 1e-9


@dataclass(frozen=True)
class Action:
    label: str
    child: int
    prob: float | None = None  # set only on Nature actions


@dataclass
class Node:
    id: int
    parent: int | None
    owner: str | None  # 'r' | 'l' | 'c', None for leaves
    infoset: int | None = None
    actions: list[Action] = field(default_factory=list)
    u_r: float = 0.0  # normalized (non-negative) leaf payoffs
    u_l: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.owner is None


@dataclass
class InfoSet:
    id: int
    owner: str
    nodes: list[int] = field(default_factory=list)
    labels: tuple[str, ...] = ()

    @property
    def num_actions(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


class GameTree:
    """Immutable extensive-form game.

    ``nodes`` must form a tree rooted at node 0 with parents appearing before
    children.  Leaf utilities passed in are the raw game payoffs; they are
    shifted by the global minimum so that stored payoffs are non-negative.
    """

    def __init__(self, nodes: list[Node], infosets: dict[int, InfoSet],
                 name: str = "game"):
        self.nodes = nodes
        self.infosets = infosets
        self.name = name
        self.root = 0

        leaf_utils = [u for n in nodes if n.is_leaf for u in (n.u_r, n.u_l)]
        self.util_shift = min(leaf_utils) if leaf_utils else 0.0
        for n in nodes:
            if n.is_leaf:
                n.u_r -= self.util_shift
                n.u_l -= self.util_shift

        self.depth = [0] * len(nodes)
        for n in nodes:
            if n.parent is not None:
                self.depth[n.id] = self.depth[n.parent] + 1

        # Nature reach probability from the root (excludes both players).
        self.nature_reach = np.ones(len(nodes))
        for n in nodes:
            for a in n.actions:
                p = a.prob if n.owner == "c" else 1.0
                self.nature_reach[a.child] = self.nature_reach[n.id] * (p or 0.0)

        self.leaves = [n.id for n in nodes if n.is_leaf]
        self._seq_index: SequenceIndex | None = None

    def __len__(self):
        return len(self.nodes)

    def infosets_of(self, player: str) -> list[InfoSet]:
        """Player's information sets ordered by first node id (preorder)."""
        sets = [i for i in self.infosets.values() if i.owner == player]
        sets.sort(key=lambda i: min(i.nodes))
        return sets

    def child(self, node_id: int, action_idx: int) -> int:
        return self.nodes[node_id].actions[action_idx].child

    def leaf_payoff_raw(self, node_id: int, player: str) -> float:
        n = self.nodes[node_id]
        u = n.u_r if player == "r" else n.u_l
        return u + self.util_shift

    def max_payoff(self, player: str = "r") -> float:
        return max((n.u_r if player == "r" else n.u_l)
                   for n in self.nodes if n.is_leaf)

    def subtree_depth(self, node_id: int) -> int:
        """Number of edges on the longest path below ``node_id``."""
        best = 0
        stack = [(node_id, 0)]
        while stack:
            s, d = stack.pop()
            best = max(best, d)
            for a in self.nodes[s].actions:
                stack.append((a.child, d + 1))
        return best

    @property
    def sequences(self) -> "SequenceIndex":
        if self._seq_index is None:
            self._seq_index = SequenceIndex(self)
        return self._seq_index

    def is_zero_sum(self, tol: float = NATURE_TOL) -> bool:
        target = -2.0 * self.util_shift
        return all(abs(self.nodes[z].u_r + self.nodes[z].u_l - target) <= tol
                   for z in self.leaves)


class SequenceIndex:
    """Sequence-form indexing for both players.

    Sequence 0 is the empty sequence.  Every other sequence is an
    (infoset, action index) pair; numbering follows the preorder in which the
    pairs are first reachable, so it is deterministic for a fixed tree.
    """

    def __init__(self, game: GameTree):
        self.game = game
        self.seqs: dict[str, list[tuple[int, int] | None]] = {p: [None] for p in PLAYERS}
        self.seq_id: dict[str, dict[tuple[int, int], int]] = {p: {} for p in PLAYERS}
        self.node_seq: dict[str, list[int]] = {p: [0] * len(game) for p in PLAYERS}
        self.infoset_parent_seq: dict[int, int] = {}
        self.infoset_order: dict[str, list[int]] = {p: [] for p in PLAYERS}

        # Preorder walk carrying the current sequence of each player.
        stack = [(game.root, {"r": 0, "l": 0})]
        seen_infosets = set()
        while stack:
            sid, cur = stack.pop()
            node = game.nodes[sid]
            for p in PLAYERS:
                self.node_seq[p][sid] = cur[p]
            if node.is_leaf:
                continue
            if node.owner in PLAYERS:
                iset = node.infoset
                if iset not in seen_infosets:
                    seen_infosets.add(iset)
                    self.infoset_order[node.owner].append(iset)
                    self.infoset_parent_seq[iset] = cur[node.owner]
                    for ai in range(len(node.actions)):
                        self.seq_id[node.owner][(iset, ai)] = len(self.seqs[node.owner])
                        self.seqs[node.owner].append((iset, ai))
            # Reversed push so children are visited in action order.
            for ai in reversed(range(len(node.actions))):
                nxt = dict(cur)
                if node.owner in PLAYERS:
                    nxt[node.owner] = self.seq_id[node.owner][(node.infoset, ai)]
                stack.append((node.actions[ai].child, nxt))

        # Child infosets of each sequence (infosets whose parent sequence it is).
        self.seq_children: dict[str, list[list[int]]] = {
            p: [[] for _ in self.seqs[p]] for p in PLAYERS}
        for p in PLAYERS:
            for iset in self.infoset_order[p]:
                self.seq_children[p][self.infoset_parent_seq[iset]].append(iset)

    def num_sequences(self, player: str) -> int:
        return len(self.seqs[player])

    def action_seqs(self, player: str, infoset: int) -> list[int]:
        iset = self.game.infosets[infoset]
        return [self.seq_id[player][(infoset, ai)]
                for ai in range(iset.num_actions)]


@dataclass
class RealizationPlan:
    """Sequence-form strategy: one realization weight per sequence."""

    owner: str
    values: np.ndarray

    @classmethod
    def uniform(cls, game: GameTree, player: str) -> "RealizationPlan":
        idx = game.sequences
        vals = np.zeros(idx.num_sequences(player))
        vals[0] = 1.0
        for iset_id in idx.infoset_order[player]:
            parent = idx.infoset_parent_seq[iset_id]
            seqs = idx.action_seqs(player, iset_id)
            for s in seqs:
                vals[s] = vals[parent] / len(seqs)
        return cls(player, vals)

    @classmethod
    def pure(cls, game: GameTree, player: str,
             choices: dict[int, int]) -> "RealizationPlan":
        """Plan that plays ``choices[infoset] = action index`` with probability 1."""
        idx = game.sequences
        vals = np.zeros(idx.num_sequences(player))
        vals[0] = 1.0
        for iset_id in idx.infoset_order[player]:
            parent = idx.infoset_parent_seq[iset_id]
            seqs = idx.action_seqs(player, iset_id)
            pick = choices.get(iset_id, 0)
            vals[seqs[pick]] = vals[parent]
        return cls(player, vals)

    @classmethod
    def from_behavioral(cls, game: GameTree, player: str,
                        sigma: dict[tuple[int, int], float]) -> "RealizationPlan":
        idx = game.sequences
        vals = np.zeros(idx.num_sequences(player))
        vals[0] = 1.0
        for iset_id in idx.infoset_order[player]:
            parent = idx.infoset_parent_seq[iset_id]
            for ai, s in enumerate(idx.action_seqs(player, iset_id)):
                vals[s] = vals[parent] * sigma.get((iset_id, ai), 0.0)
        return cls(player, vals)

    def behavioral(self, game: GameTree, infoset: int, action_idx: int) -> float:
        """sigma(I, a) = x_a / x_parent; 0 where the infoset is unreachable."""
        idx = game.sequences
        parent = self.values[idx.infoset_parent_seq[infoset]]
        if parent <= 0.0:
            return 0.0
        return self.values[idx.seq_id[self.owner][(infoset, action_idx)]] / parent

    def check_flow(self, game: GameTree, tol: float = 1e-9) -> list[str]:
        idx = game.sequences
        errs = []
        if abs(self.values[0] - 1.0) > tol:
            errs.append("empty sequence weight != 1")
        for iset_id in idx.infoset_order[self.owner]:
            parent = idx.infoset_parent_seq[iset_id]
            total = sum(self.values[s] for s in idx.action_seqs(self.owner, iset_id))
            if abs(total - self.values[parent]) > tol:
                errs.append(f"flow violated at infoset {iset_id}")
        return errs


@dataclass
class ReachProbabilities:
    reach: np.ndarray       # pi^sigma(s), all players and Nature
    nature: np.ndarray      # pi_0(s)
    player: dict[str, np.ndarray]  # pi_r(s), pi_l(s)

    def excluding(self, player: str) -> np.ndarray:
        other = "l" if player == "r" else "r"
        return self.nature * self.player[other]


def reach_probabilities(game: GameTree,
                        plan_r: RealizationPlan,
                        plan_l: RealizationPlan) -> ReachProbabilities:
    """Per-node reach probabilities under a realization-plan profile."""
    idx = game.sequences
    per_player = {
        "r": plan_r.values[idx.node_seq["r"]],
        "l": plan_l.values[idx.node_seq["l"]],
    }
    reach = game.nature_reach * per_player["r"] * per_player["l"]
    return ReachProbabilities(reach=reach, nature=game.nature_reach.copy(),
                              player=per_player)


def expected_utility(game: GameTree, plan_r: RealizationPlan,
                     plan_l: RealizationPlan, player: str = "r",
                     raw: bool = True) -> float:
    """Leaf-wise expected utility sum_z pi(z) u(z); raw un-shifts the payoffs."""
    rp = reach_probabilities(game, plan_r, plan_l)
    total = 0.0
    mass = 0.0
    for z in game.leaves:
        n = game.nodes[z]
        total += rp.reach[z] * (n.u_r if player == "r" else n.u_l)
        mass += rp.reach[z]
    if raw:
        total += game.util_shift * mass
    return total


def payoff_matrix(game: GameTree, player: str = "r") -> np.ndarray:
    """Sequence-form payoff matrix: rows r-sequences, columns l-sequences.

    Entry [a, b] collects pi_0(z) * u(z) over leaves whose last sequences are
    (a, b).  Uses the normalized (non-negative) payoffs.
    """
    idx = game.sequences
    mat = np.zeros((idx.num_sequences("r"), idx.num_sequences("l")))
    for z in game.leaves:
        n = game.nodes[z]
        u = n.u_r if player == "r" else n.u_l
        mat[idx.node_seq["r"][z], idx.node_seq["l"][z]] += game.nature_reach[z] * u
    return mat


def validate(game: GameTree) -> list[Violation]:
    """Check all structural invariants; returns one entry per violation."""
    out: list[Violation] = []
    seen_child = {}
    for n in game.nodes:
        for a in n.actions:
            if a.child >= len(game.nodes) or a.child < 0:
                out.append(Violation("DanglingChild",
                                     f"node {n.id} action {a.label} -> {a.child}"))
                continue
            if a.child in seen_child:
                out.append(Violation("TreeStructure",
                                     f"node {a.child} has two parents"))
            seen_child[a.child] = n.id
            if game.nodes[a.child].parent != n.id:
                out.append(Violation("TreeStructure",
                                     f"node {a.child} parent mismatch"))
    for n in game.nodes:
        if n.id != game.root and n.id not in seen_child:
            out.append(Violation("TreeStructure", f"node {n.id} unreachable"))

    for n in game.nodes:
        if n.owner == "c":
            total = sum(a.prob or 0.0 for a in n.actions)
            if abs(total - 1.0) > NATURE_TOL:
                out.append(Violation("NatureProbSum",
                                     f"node {n.id} outcome probs sum to {total}"))
        if n.owner in PLAYERS and n.infoset not in game.infosets:
            out.append(Violation("MissingInfoSet",
                                 f"node {n.id} references infoset {n.infoset}"))

    for iset in game.infosets.values():
        owners = {game.nodes[s].owner for s in iset.nodes}
        if owners - {iset.owner}:
            out.append(Violation("InfoSetOwnerMismatch",
                                 f"infoset {iset.id} mixes owners {owners}"))
        sigs = {tuple(a.label for a in game.nodes[s].actions) for s in iset.nodes}
        if len(sigs) > 1:
            out.append(Violation("ActionSetMismatch",
                                 f"infoset {iset.id} has differing action sets"))

    out.extend(_check_perfect_recall(game))

    if any(n.u_r < -NATURE_TOL or n.u_l < -NATURE_TOL
           for n in game.nodes if n.is_leaf):
        out.append(Violation("NegativeUtility",
                             "normalized leaf utilities must be non-negative"))
    return out


def _check_perfect_recall(game: GameTree) -> list[Violation]:
    out = []
    # Own-action history per node per player, as (infoset, action) pairs.
    hist: dict[str, list[tuple]] = {p: [()] * len(game.nodes) for p in PLAYERS}
    order = sorted(game.nodes, key=lambda n: game.depth[n.id])
    for n in order:
        for ai, a in enumerate(n.actions):
            for p in PLAYERS:
                h = hist[p][n.id]
                if n.owner == p:
                    h = h + ((n.infoset, ai),)
                hist[p][a.child] = h
    for iset in game.infosets.values():
        if iset.owner not in PLAYERS:
            continue
        histories = {hist[iset.owner][s] for s in iset.nodes}
        if len(histories) > 1:
            out.append(Violation(
                "PerfectRecallViolation",
                f"infoset {iset.id} nodes have differing own histories"))
    return out
