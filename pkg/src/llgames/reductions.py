"""Gadget games encoding SAT/MAXSAT instances as commitment problems.

Three generators turn a 3-CNF formula into a small game against the
limited-lookahead player, each exercising a different solver regime:

* :func:`gadget_favorable` (depth 1, favorable ties): the commitment value
  times the clause count equals the MAXSAT optimum.
* :func:`gadget_lookahead2` (depth 2, any tie rule): the commitment value
  is 1 exactly when the formula is satisfiable.
* :func:`gadget_infosets` (depth 1, any tie rule, non-singleton infosets
  of size up to 6): the commitment value is 1 exactly when the formula is
  satisfiable.

Brute-force oracles (:func:`max_sat`, :func:`is_satisfiable`) are included
so the solvers can be validated end to end on small instances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .builders import TreeBuilder
from .heuristics import EvaluationFunction, Provenance
from .lookahead import ADVERSARIAL, FAVORABLE, LookaheadSpec
from .trees import GameTree

Literal = tuple[int, bool]  # (variable index, True for positive polarity)


@dataclass(frozen=True)
class CnfInstance:
    """A CNF formula whose clauses all have exactly three literals."""

    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("every clause must have exactly 3 literals")
            for var, pos in clause:
                if not 0 <= var < self.num_vars:
                    raise ValueError(f"variable index {var} out of range")
                if not isinstance(pos, bool):
                    raise ValueError("polarity must be a bool")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_count(self, assignment) -> int:
        """Number of clauses satisfied by a truth assignment (indexable)."""
        return sum(any(assignment[v] == pos for v, pos in clause)
                   for clause in self.clauses)


def make_cnf(num_vars: int, clauses) -> CnfInstance:
    """Build a CnfInstance, padding short clauses with fresh dummy variables.

    A clause with fewer than three literals gains positive literals over
    brand-new variables, one per missing slot.  The dummies are free, so a
    padded clause is always satisfiable on its own; the brute-force oracles
    enumerate the dummies too, which keeps oracle and gadget consistent.
    """
    n = num_vars
    padded = []
    for clause in clauses:
        lits = [(int(v), bool(p)) for v, p in clause]
        if not 1 <= len(lits) <= 3:
            raise ValueError("clauses must have 1 to 3 literals before padding")
        while len(lits) < 3:
            lits.append((n, True))
            n += 1
        padded.append(tuple(lits))
    return CnfInstance(n, tuple(padded))


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF text; clauses are padded to three literals."""
    num_vars = None
    clauses: list[list[Literal]] = []
    current: list[Literal] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"bad problem line {line!r}")
            num_vars = int(fields[2])
            continue
        if line.startswith("%"):
            break
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if current:
                    clauses.append(current)
                    current = []
            else:
                current.append((abs(lit) - 1, lit > 0))
    if current:
        clauses.append(current)
    if num_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    for clause in clauses:
        if len(clause) > 3:
            raise ValueError("clauses with more than 3 literals are not supported")
    return make_cnf(num_vars, clauses)


def max_sat(cnf: CnfInstance):
    """Exhaustive MAXSAT: (best satisfied-clause count, a best assignment)."""
    best, best_assign = -1, None
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        count = cnf.satisfied_count(bits)
        if count > best:
            best, best_assign = count, bits
    return best, best_assign


def is_satisfiable(cnf: CnfInstance) -> bool:
    return max_sat(cnf)[0] == cnf.num_clauses


def _leaf_eval(game: GameTree) -> EvaluationFunction:
    """Evaluation that scores leaves by Player l's raw payoff, 0 elsewhere."""
    values = np.zeros(len(game))
    for n in game.nodes:
        if n.is_leaf:
            values[n.id] = n.u_l + game.util_shift
    return EvaluationFunction(values, Provenance("custom"))


def gadget_favorable(cnf: CnfInstance):
    """Depth-1 favorable-ties gadget whose value is MAXSAT optimum / m.

    Nature picks a clause uniformly; Player l (singleton infosets) picks one
    of its three literals, indifferent because her payoff is 0 everywhere;
    Player r then sets the literal's variable true or false inside a
    per-variable infoset and collects 1 exactly when the chosen literal is
    satisfied.  With favorable ties Player l picks the literal Player r
    prefers, so the value is the best achievable satisfaction rate.
    """
    m = cnf.num_clauses
    if m == 0:
        raise ValueError("need at least one clause")
    b = TreeBuilder(1)
    root = b.add_chance(None)
    for ci, clause in enumerate(cnf.clauses):
        cn = b.add_decision(root, 2, ("clause", ci), ("l0", "l1", "l2"))
        b.link(root, f"c{ci}", cn, prob=1.0 / m)
        for li, (var, pos) in enumerate(clause):
            vn = b.add_decision(cn, 1, ("var", var), ("true", "false"))
            b.link(cn, f"l{li}", vn)
            b.link(vn, "true", b.add_leaf(vn, 1.0 if pos else 0.0, 0.0))
            b.link(vn, "false", b.add_leaf(vn, 0.0 if pos else 1.0, 0.0))
    game = b.build(f"maxsat-gadget-{cnf.num_vars}v{m}c")
    h = EvaluationFunction(np.zeros(len(game)), Provenance("custom"))
    return game, LookaheadSpec(1, h, FAVORABLE)


def gadget_lookahead2(cnf: CnfInstance):
    """Depth-2 gadget whose value is 1 iff the formula is satisfiable.

    Extends the favorable gadget with an extra clause action leading
    straight to a leaf worth 0 to Player r and 2/3 to Player l, and gives
    Player l payoff 1 at variable leaves that satisfy the clause (0
    otherwise) while Player r collects 1 at every variable leaf.  Looking
    two moves ahead, Player l takes a literal action only when the variable
    is set to satisfy the clause with probability at least 2/3, which only
    a satisfying pure commitment achieves for every clause at once.  The
    tie-breaking rule does not matter.
    """
    m = cnf.num_clauses
    if m == 0:
        raise ValueError("need at least one clause")
    b = TreeBuilder(1)
    root = b.add_chance(None)
    for ci, clause in enumerate(cnf.clauses):
        cn = b.add_decision(root, 2, ("clause", ci),
                            ("l0", "l1", "l2", "unsat"))
        b.link(root, f"c{ci}", cn, prob=1.0 / m)
        for li, (var, pos) in enumerate(clause):
            vn = b.add_decision(cn, 1, ("var", var), ("true", "false"))
            b.link(cn, f"l{li}", vn)
            b.link(vn, "true", b.add_leaf(vn, 1.0, 1.0 if pos else 0.0))
            b.link(vn, "false", b.add_leaf(vn, 1.0, 0.0 if pos else 1.0))
        b.link(cn, "unsat", b.add_leaf(cn, 0.0, 2.0 / 3.0))
    game = b.build(f"sat2-gadget-{cnf.num_vars}v{m}c")
    return game, LookaheadSpec(2, _leaf_eval(game), ADVERSARIAL)


def gadget_infosets(cnf: CnfInstance):
    """Depth-1 gadget with clause infosets of size up to 6; value 1 iff SAT.

    Nature picks a (variable, clause) incidence pair uniformly; Player r
    sets the variable inside a per-variable infoset; Player l then acts in a
    per-clause infoset containing both truth settings of each of its three
    variables.  Besides the unsat action (0 to r, 2/3 to l everywhere), one
    action per clause variable pays r 1 at every node and l 3 only at the
    node where that variable carries its satisfying value.  The variable
    action for w then scores 3*sigma(w satisfying)/N against the unsat
    action's 2/N, so it wins exactly when the commitment sets w right with
    probability at least 2/3, regardless of the tie rule.

    Clauses that mention the same variable twice are rejected: the infoset
    would collapse below size 6 and the probability bookkeeping above
    changes.
    """
    m = cnf.num_clauses
    if m == 0:
        raise ValueError("need at least one clause")
    for clause in cnf.clauses:
        if len({var for var, _ in clause}) != 3:
            raise ValueError("clauses with repeated variables are not supported")
    pairs = [(var, pos, ci) for ci, clause in enumerate(cnf.clauses)
             for var, pos in clause]
    n_pairs = len(pairs)
    b = TreeBuilder(1)
    root = b.add_chance(None)
    for var, pos, ci in pairs:
        rn = b.add_decision(root, 1, ("var", var), ("true", "false"))
        b.link(root, f"v{var}c{ci}", rn, prob=1.0 / n_pairs)
        for value in (True, False):
            ln = b.add_decision(rn, 2, ("clause", ci),
                                ("unsat", "w0", "w1", "w2"))
            b.link(rn, "true" if value else "false", ln)
            b.link(ln, "unsat", b.add_leaf(ln, 0.0, 2.0 / 3.0))
            for wi, (wvar, wpos) in enumerate(cnf.clauses[ci]):
                satisfying = wvar == var and value == pos
                b.link(ln, f"w{wi}",
                       b.add_leaf(ln, 1.0, 3.0 if satisfying else 0.0))
    game = b.build(f"sat1-gadget-{cnf.num_vars}v{m}c")
    return game, LookaheadSpec(1, _leaf_eval(game), ADVERSARIAL)
