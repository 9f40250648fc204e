"""Game tree core: construction, sequence form, plans, payoff matrices."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_game
from llgames.builders import build_kj, build_kuhn
from llgames.trees import (RealizationPlan, expected_utility, payoff_matrix,
                           reach_probabilities, validate)


def test_kuhn_counts():
    g = build_kuhn()
    assert len(g) == 55
    assert g.sequences.num_sequences("r") == 13
    assert g.sequences.num_sequences("l") == 13
    assert validate(g) == []


def test_kj_counts():
    g = build_kj()
    assert len(g) == 199
    assert g.sequences.num_sequences("r") == 57
    assert g.sequences.num_sequences("l") == 57
    assert validate(g) == []


def test_kuhn_zero_sum_and_shift():
    g = build_kuhn()
    assert g.is_zero_sum()
    # Shift makes every stored utility nonnegative and leaves raw payoffs
    # recoverable.
    for z in g.leaves:
        n = g.nodes[z]
        assert n.u_r >= 0 and n.u_l >= 0
        assert n.u_r + n.u_l + 2 * g.util_shift == pytest.approx(0)


def test_rational_player_seat_swap():
    g1 = build_kuhn(1)
    g2 = build_kuhn(2)
    assert len(g1) == len(g2)
    # Seat 2's owners are swapped relative to seat 1.
    for a, b in zip(g1.nodes, g2.nodes):
        if a.owner in ("r", "l"):
            assert {a.owner, b.owner} == {"r", "l"}


def test_uniform_plan_flow():
    g = build_kj()
    for pl in ("r", "l"):
        plan = RealizationPlan.uniform(g, pl)
        assert plan.check_flow(g) == []
        assert plan.values[0] == 1.0


def test_pure_plan_behavioral():
    g = build_kuhn()
    choices = {i.id: 0 for i in g.infosets_of("r")}
    plan = RealizationPlan.pure(g, "r", choices)
    assert plan.check_flow(g) == []
    assert set(np.unique(plan.values)) <= {0.0, 1.0}


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000), st.data())
def test_from_behavioral_round_trip(seed, data):
    g = random_game(seed)
    rng = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    for pl in ("r", "l"):
        behav = {}
        for iset in g.infosets_of(pl):
            p = rng.dirichlet(np.ones(iset.num_actions))
            for ai in range(iset.num_actions):
                behav[(iset.id, ai)] = float(p[ai])
        plan = RealizationPlan.from_behavioral(g, pl, behav)
        assert plan.check_flow(g) == []
        for iset in g.infosets_of(pl):
            for ai in range(iset.num_actions):
                assert plan.behavioral(g, iset.id, ai) == pytest.approx(
                    behav[(iset.id, ai)])


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_payoff_matrix_matches_expected_utility(seed):
    g = random_game(seed)
    rng = np.random.default_rng(seed + 1)
    plans = {}
    for pl in ("r", "l"):
        behav = {}
        for i in g.infosets_of(pl):
            p = rng.dirichlet(np.ones(i.num_actions))
            for ai in range(i.num_actions):
                behav[(i.id, ai)] = float(p[ai])
        plans[pl] = RealizationPlan.from_behavioral(g, pl, behav)
    A = payoff_matrix(g, "r")
    bilinear = float(plans["r"].values @ A @ plans["l"].values)
    direct = expected_utility(g, plans["r"], plans["l"], "r")
    # Full-support plans place total mass 1 on the leaves, so the raw value
    # and the normalized bilinear form differ by exactly the shift.
    assert bilinear == pytest.approx(direct - g.util_shift, abs=1e-9)


def test_reach_probabilities_leaf_mass():
    g = build_kuhn()
    pr = RealizationPlan.uniform(g, "r")
    pl = RealizationPlan.uniform(g, "l")
    reach = reach_probabilities(g, pr, pl)
    mass = sum(reach.reach[z] for z in g.leaves)
    assert mass == pytest.approx(1.0)


def test_reach_excluding_player():
    g = build_kuhn()
    pr = RealizationPlan.uniform(g, "r")
    pl = RealizationPlan.uniform(g, "l")
    reach = reach_probabilities(g, pr, pl)
    ex = reach.excluding("l")
    # Excluding l's contribution can only increase reach.
    assert np.all(ex >= reach.reach - 1e-12)


def test_validate_catches_bad_chance_probs():
    g = build_kuhn()
    g.nodes[0].actions[0] = g.nodes[0].actions[0].__class__(
        g.nodes[0].actions[0].label, g.nodes[0].actions[0].child, 0.9)
    assert any(v.kind == "NatureProbSum" for v in validate(g))


def test_validate_catches_broken_infoset_actions():
    g = build_kuhn()
    # Drop an action from one node of a two-node infoset.
    iset = next(i for i in g.infosets_of("l") if len(i.nodes) >= 1)
    g.nodes[iset.nodes[0]].actions.pop()
    assert validate(g) != []


def test_sequences_parents_consistent():
    g = build_kj()
    idx = g.sequences
    for pl in ("r", "l"):
        for iset_id in idx.infoset_order[pl]:
            seqs = idx.action_seqs(pl, iset_id)
            assert len(seqs) == g.infosets[iset_id].num_actions
            assert all(s > 0 for s in seqs)
