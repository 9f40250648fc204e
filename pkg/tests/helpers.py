"""Shared test utilities: seeded random small games and evaluations."""
from __future__ import annotations

import numpy as np

from llgames.builders import TreeBuilder
from llgames.heuristics import EvaluationFunction, Provenance
from llgames.trees import GameTree, validate


def random_game(seed: int) -> GameTree:
    """Small random perfect-recall game with up to 4 Player-l infosets.

    Shape: a chance root, a layer of Player-r decisions hidden from
    Player l, then Player-l infosets pooling nodes across both Player-r
    actions (and chance outcomes), so l's beliefs depend on the committed
    plan.  Per (infoset, action) the continuation is a leaf, a Player-r
    decision, or a second layer of Player-l nodes (so lookahead windows
    sometimes contain Player-l choices).  Payoffs are small integers.
    """
    rng = np.random.default_rng(seed)
    b = TreeBuilder(1)
    root = b.add_chance(None)
    n_out = int(rng.integers(2, 4))
    probs = rng.dirichlet(np.ones(n_out))
    n_l1 = int(rng.integers(1, 3))
    acts1 = int(rng.integers(2, 4))
    labels1 = tuple(f"a{i}" for i in range(acts1))

    def leaf(parent):
        return b.add_leaf(parent, float(rng.integers(0, 6)),
                          float(rng.integers(0, 6)))

    # Continuation template per (level-1 infoset, action); at most 4 -
    # n_l1 of them may be second-layer l infosets.
    kinds = {}
    l2_budget = 4 - n_l1
    for g in range(n_l1):
        for ai in range(acts1):
            kind = rng.choice(["leaf", "rnode", "lnode"])
            if kind == "lnode" and l2_budget <= 0:
                kind = "rnode"
            if kind == "lnode":
                l2_budget -= 1
            kinds[(g, ai)] = kind

    for i in range(n_out):
        g = i % n_l1
        # Player r moves first (l cannot tell u from v), pooled per group so
        # the commitment shapes l's beliefs at the infosets below.
        rt = b.add_decision(root, 1, ("RT", g), ("u", "v"))
        b.link(root, f"o{i}", rt, prob=float(probs[i]))
        for rlab in ("u", "v"):
            node = b.add_decision(rt, 2, ("L1", g), labels1)
            b.link(rt, rlab, node)
            for ai in range(acts1):
                kind = kinds[(g, ai)]
                if kind == "leaf":
                    b.link(node, labels1[ai], leaf(node))
                elif kind == "rnode":
                    # Key includes r's first move to keep r's recall perfect.
                    rn = b.add_decision(node, 1, ("R", g, ai, rlab),
                                        ("y", "n"))
                    b.link(node, labels1[ai], rn)
                    b.link(rn, "y", leaf(rn))
                    b.link(rn, "n", leaf(rn))
                else:
                    ln = b.add_decision(node, 2, ("L2", g, ai), ("p", "q"))
                    b.link(node, labels1[ai], ln)
                    b.link(ln, "p", leaf(ln))
                    b.link(ln, "q", leaf(ln))
    game = b.build(f"rand{seed}")
    assert validate(game) == []
    assert len(list(game.infosets_of("l"))) <= 4
    return game


def random_zero_sum_game(seed: int) -> GameTree:
    """Like random_game but with zero-sum payoffs (u_l = -u_r)."""
    rng = np.random.default_rng(seed)
    b = TreeBuilder(1)
    root = b.add_chance(None)
    n_out = int(rng.integers(2, 4))
    probs = rng.dirichlet(np.ones(n_out))
    n_l1 = int(rng.integers(1, 3))
    acts1 = int(rng.integers(2, 4))
    labels1 = tuple(f"a{i}" for i in range(acts1))

    def leaf(parent):
        u = float(rng.integers(-3, 4))
        return b.add_leaf(parent, u, -u)

    for i in range(n_out):
        g = i % n_l1
        node = b.add_decision(root, 2, ("L1", g), labels1)
        b.link(root, f"o{i}", node, prob=float(probs[i]))
        for ai in range(acts1):
            if rng.random() < 0.5:
                b.link(node, labels1[ai], leaf(node))
            else:
                rn = b.add_decision(node, 1, ("R", g, ai), ("u", "v"))
                b.link(node, labels1[ai], rn)
                b.link(rn, "u", leaf(rn))
                b.link(rn, "v", leaf(rn))
    game = b.build(f"zs{seed}")
    assert validate(game) == []
    assert game.is_zero_sum()
    return game


def random_singleton_game(seed: int) -> GameTree:
    """Zero-sum random game where every Player-l infoset is a singleton."""
    rng = np.random.default_rng(seed)
    b = TreeBuilder(1)
    root = b.add_chance(None)
    n_out = int(rng.integers(2, 4))
    probs = rng.dirichlet(np.ones(n_out))

    def leaf(parent):
        u = float(rng.integers(-3, 4))
        return b.add_leaf(parent, u, -u)

    for i in range(n_out):
        acts = int(rng.integers(2, 4))
        labels = tuple(f"a{j}" for j in range(acts))
        node = b.add_decision(root, 2, ("L", i), labels)
        b.link(root, f"o{i}", node, prob=float(probs[i]))
        for ai in range(acts):
            if rng.random() < 0.5:
                b.link(node, labels[ai], leaf(node))
            else:
                rn = b.add_decision(node, 1, ("R", i, ai), ("u", "v"))
                b.link(node, labels[ai], rn)
                b.link(rn, "u", leaf(rn))
                b.link(rn, "v", leaf(rn))
    game = b.build(f"single{seed}")
    assert validate(game) == []
    assert all(len(i.nodes) == 1 for i in game.infosets_of("l"))
    return game


def random_eval(game: GameTree, seed: int) -> EvaluationFunction:
    """Random coarse-grid node evaluation; the grid makes ties common."""
    rng = np.random.default_rng(seed + 10_000)
    values = rng.integers(-8, 9, size=len(game)) * 0.25
    return EvaluationFunction(np.asarray(values, dtype=float),
                              Provenance("custom"))
