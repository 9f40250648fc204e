"""Branch and bound over binary variables on top of the dense simplex.

Depth-first search branching on the most fractional binary (ties to the
lowest variable index), exploring the side nearer the relaxation value
first.  Every 1000 processed nodes the open stack is re-sorted so the best
bound is explored next.  Everything is deterministic for fixed input.
"""
from __future__ import annotations

import math
import time

import numpy as np

from .problem import (BINARY, INFEASIBLE, ITER_LIMIT, NODE_LIMIT, OPTIMAL,
                      OptProblem, OptSolution)
from .simplex import EPS_STRICT, FEAS_TOL, MAX_PIVOTS, DenseLP

INT_TOL = 1e-6
MIP_GAP = 1e-6
MAX_NODES = 1_000_000
REORDER_EVERY = 1000


def solve_mip(problem: OptProblem, node_limit: int = MAX_NODES,
              eps_strict: float = EPS_STRICT,
              max_iter: int = MAX_PIVOTS) -> OptSolution:
    """Solve a mixed binary program; returns duals=None (no LP certificate)."""
    t0 = time.perf_counter()
    lp = DenseLP(problem, eps_strict=eps_strict)
    binaries = [j for j in range(problem.num_vars)
                if problem.kind[j] == BINARY]
    if not binaries:
        sol = lp.solve(max_iter=max_iter)
        sol.node_count = 1
        sol.wall_time = time.perf_counter() - t0
        return sol

    sense = lp.sense_sign  # internal bounds are in min form
    best_min = math.inf
    best_x = None
    iterations = 0
    processed = 0
    hit_iter_limit = False
    # Stack entries: (parent bound in min form, lower bounds, upper bounds).
    stack = [(-math.inf, lp.lb.copy(), lp.ub.copy())]

    while stack:
        if processed >= node_limit:
            break
        bound, lo, hi = stack.pop()
        if bound >= best_min - MIP_GAP:
            continue
        processed += 1
        if processed % REORDER_EVERY == 0:
            stack.sort(key=lambda e: e[0], reverse=True)

        sol = lp.solve(lb=lo, ub=hi, max_iter=max_iter)
        iterations += sol.iterations
        if sol.status == INFEASIBLE:
            continue
        if sol.status == ITER_LIMIT:
            hit_iter_limit = True
            continue
        node_min = sense * sol.objective
        if node_min >= best_min - MIP_GAP:
            continue

        frac = np.array([min(sol.x[j] - math.floor(sol.x[j]),
                             math.ceil(sol.x[j]) - sol.x[j])
                         for j in binaries])
        worst = int(np.argmax(frac))
        if frac[worst] <= INT_TOL:
            x = sol.x.copy()
            for j in binaries:
                x[j] = round(x[j])
            # Recheck the rounded point against the original row data:
            # near-integral vertices can sit on big-M rows where even an
            # INT_TOL nudge (or tableau drift after a long degenerate pivot
            # sequence) breaks feasibility.  If a binary is loose, branch
            # to pin it exactly; if all are exact, the node is unreliable.
            if lp.violation(x, lo, hi) > FEAS_TOL:
                if frac[worst] <= 0.0:
                    continue
            else:
                best_min = node_min
                best_x = x
                continue

        j = binaries[worst]
        lo0, hi0 = lo.copy(), hi.copy()
        hi0[j] = 0.0
        lo1, hi1 = lo.copy(), hi.copy()
        lo1[j] = 1.0
        near_one = sol.x[j] >= 0.5
        far = (node_min, lo0, hi0) if near_one else (node_min, lo1, hi1)
        near = (node_min, lo1, hi1) if near_one else (node_min, lo0, hi0)
        stack.append(far)
        stack.append(near)

    wall = time.perf_counter() - t0
    remaining = min((e[0] for e in stack), default=math.inf)
    bound_min = min(remaining, best_min)
    if best_x is None:
        if stack or hit_iter_limit:
            status = NODE_LIMIT if stack else ITER_LIMIT
            return OptSolution(status, iterations=iterations,
                               node_count=processed, wall_time=wall)
        return OptSolution(INFEASIBLE, iterations=iterations,
                           node_count=processed, wall_time=wall)
    status = NODE_LIMIT if stack else OPTIMAL
    return OptSolution(status, x=best_x,
                       objective=problem.objective_value(best_x),
                       dual_objective=sense * bound_min,
                       iterations=iterations, node_count=processed,
                       wall_time=wall)
