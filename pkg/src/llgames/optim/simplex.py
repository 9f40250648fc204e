"""Two-phase dense simplex with Bland's rule and honest dual extraction.

The pivot loop lives in a compiled kernel (``_simplex_c``) with a numpy
fallback (``_simplex_py``); set ``LLG_PURE_PYTHON=1`` to force the fallback.

``DenseLP`` freezes an :class:`~llgames.optim.problem.OptProblem` into dense
arrays once and then supports repeated solves under tightened variable
bounds, which is what branch and bound needs.
"""
from __future__ import annotations

import math
import os
import time

import numpy as np

from .problem import (EQ, GE, INFEASIBLE, ITER_LIMIT, LE, OPTIMAL, UNBOUNDED,
                      OptProblem, OptSolution)

if os.environ.get("LLG_PURE_PYTHON") == "1":
    from . import _simplex_py as _kernel
    KERNEL_NAME = "python"
else:
    try:
        from . import _simplex_c as _kernel
        KERNEL_NAME = "cython"
    except ImportError:
        from . import _simplex_py as _kernel
        KERNEL_NAME = "python"

FEAS_TOL = 1e-7
DUALITY_TOL = 1e-6
EPS_STRICT = 1e-6
MAX_PIVOTS = 1_000_000


class DenseLP:
    """Dense snapshot of an LP (the continuous relaxation, for MIPs)."""

    def __init__(self, problem: OptProblem, eps_strict: float = EPS_STRICT):
        n = problem.num_vars
        m = len(problem.constraints)
        self.problem = problem
        self.n = n
        self.m = m
        self.sense_sign = 1.0 if problem.sense == "min" else -1.0
        self.c_min = self.sense_sign * np.asarray(problem.obj, dtype=float)
        self.lb = np.asarray(problem.lb, dtype=float)
        self.ub = np.asarray(problem.ub, dtype=float)
        self.A = np.zeros((m, n))
        self.b = np.zeros(m)
        self.rel = []
        for i, con in enumerate(problem.constraints):
            for v, coef in con.coeffs:
                self.A[i, v] += coef
            rhs = con.rhs
            if con.strict:
                rhs += eps_strict if con.rel == GE else -eps_strict
            self.b[i] = rhs
            self.rel.append(con.rel)

    def violation(self, x: np.ndarray, lb: np.ndarray | None = None,
                  ub: np.ndarray | None = None) -> float:
        """Max violation of a point against the frozen (eps-adjusted) rows."""
        lo = self.lb if lb is None else lb
        hi = self.ub if ub is None else ub
        worst = max(float(np.max(lo - x, initial=0.0)),
                    float(np.max(x - hi, initial=0.0)))
        lhs = self.A @ x
        for i in range(self.m):
            if self.rel[i] == LE:
                worst = max(worst, lhs[i] - self.b[i])
            elif self.rel[i] == GE:
                worst = max(worst, self.b[i] - lhs[i])
            else:
                worst = max(worst, abs(lhs[i] - self.b[i]))
        return worst

    def solve(self, lb: np.ndarray | None = None, ub: np.ndarray | None = None,
              max_iter: int = MAX_PIVOTS) -> OptSolution:
        t0 = time.perf_counter()
        lo = self.lb if lb is None else lb
        hi = self.ub if ub is None else ub
        if np.any(lo > hi + FEAS_TOL):
            return OptSolution(INFEASIBLE, wall_time=time.perf_counter() - t0)

        # Shift/mirror/split variables into the nonnegative orthant.
        # Each column k is (orig j, sign s, offset o) with x_j = s*x_k + o;
        # fixed variables (lo == hi) become pure offsets with no column.
        cols: list[tuple[int, float]] = []
        offset = np.zeros(self.n)
        ub_rows: list[tuple[int, float]] = []  # (column, upper bound)
        for j in range(self.n):
            if hi[j] - lo[j] <= 1e-12:
                offset[j] = lo[j]
            elif lo[j] > -math.inf:
                if hi[j] < math.inf:
                    ub_rows.append((len(cols), hi[j] - lo[j]))
                offset[j] = lo[j]
                cols.append((j, 1.0))
            elif hi[j] < math.inf:
                offset[j] = hi[j]
                cols.append((j, -1.0))
            else:
                cols.append((j, 1.0))
                cols.append((j, -1.0))
        nc = len(cols)
        orig = np.array([j for j, _ in cols], dtype=np.int64)
        sign = np.array([s for _, s in cols])

        A = self.A[:, orig] * sign
        b = self.b - self.A @ offset
        c = self.c_min[orig] * sign
        obj_const = float(self.c_min @ offset)

        # Append upper-bound rows, convert >= rows to <=, add slacks for
        # inequalities, then flip rows with negative rhs so artificial
        # variables can start basic at nonnegative values.
        n_ub = len(ub_rows)
        m_all = self.m + n_ub
        rel = list(self.rel) + [LE] * n_ub
        A_full = np.zeros((m_all, nc))
        A_full[:self.m] = A
        b_full = np.concatenate([b, [u for _, u in ub_rows]])
        for i, (k, _) in enumerate(ub_rows):
            A_full[self.m + i, k] = 1.0
        row_scale = np.ones(m_all)
        for i in range(m_all):
            if rel[i] == GE:
                A_full[i] = -A_full[i]
                b_full[i] = -b_full[i]
                row_scale[i] = -1.0

        slack_of = np.full(m_all, -1, dtype=np.int64)
        ns = 0
        for i in range(m_all):
            if rel[i] != EQ:
                slack_of[i] = ns
                ns += 1
        width = nc + ns + m_all + 1
        T = np.zeros((m_all + 1, width))
        T[:m_all, :nc] = A_full
        T[:m_all, -1] = b_full
        for i in range(m_all):
            if slack_of[i] >= 0:
                T[i, nc + slack_of[i]] = 1.0
        for i in range(m_all):
            if T[i, -1] < 0.0:
                T[i, :] = -T[i, :]
                row_scale[i] = -row_scale[i]
        b_int = T[:m_all, -1].copy()
        art_start = nc + ns
        basis = np.empty(m_all, dtype=np.int64)
        for i in range(m_all):
            T[i, art_start + i] = 1.0
            if slack_of[i] >= 0 and T[i, nc + slack_of[i]] > 0.0:
                basis[i] = nc + slack_of[i]
            else:
                basis[i] = art_start + i

        # Phase 1: minimize the sum of artificials.
        T[-1, art_start:art_start + m_all] = 1.0
        for i in range(m_all):
            if basis[i] >= art_start:
                T[-1] -= T[i]
        status, it1 = _kernel.run(T, basis, art_start, max_iter)
        iterations = it1
        if status == _kernel.STOP_ITER_LIMIT:
            return OptSolution(ITER_LIMIT, iterations=iterations,
                               wall_time=time.perf_counter() - t0)
        if -T[-1, -1] > FEAS_TOL:
            return OptSolution(INFEASIBLE, iterations=iterations,
                               wall_time=time.perf_counter() - t0)
        # Drive leftover zero-valued artificials out of the basis where
        # possible; rows where we cannot are redundant and stay inert.
        for i in range(m_all):
            if basis[i] >= art_start:
                row = T[i, :art_start]
                pivots = np.nonzero(np.abs(row) > 1e-9)[0]
                if pivots.size:
                    j = int(pivots[0])
                    piv = T[i] / T[i, j]
                    col = T[:, j].copy()
                    col[i] = 0.0
                    T -= np.outer(col, piv)
                    T[i] = piv
                    T[:, j] = 0.0
                    T[i, j] = 1.0
                    basis[i] = j

        # Phase 2: the real objective.
        T[-1, :] = 0.0
        T[-1, :nc] = c
        for i in range(m_all):
            if basis[i] < nc and c[basis[i]] != 0.0:
                T[-1] -= c[basis[i]] * T[i]
        status, it2 = _kernel.run(T, basis, art_start, max_iter - it1)
        iterations += it2
        if status == _kernel.STOP_UNBOUNDED:
            return OptSolution(UNBOUNDED, iterations=iterations,
                               wall_time=time.perf_counter() - t0)
        if status == _kernel.STOP_ITER_LIMIT:
            return OptSolution(ITER_LIMIT, iterations=iterations,
                               wall_time=time.perf_counter() - t0)

        x_new = np.zeros(width - 1)
        x_new[basis] = T[:m_all, -1]
        x = offset.copy()
        np.add.at(x, orig, sign * x_new[:nc])

        y_int = -T[-1, art_start:art_start + m_all]
        dual_min = float(y_int @ b_int) + obj_const
        y_user = self.sense_sign * row_scale[:self.m] * y_int[:self.m]

        objective = self.problem.objective_value(x)
        return OptSolution(OPTIMAL, x=x, objective=objective,
                           dual_objective=self.sense_sign * dual_min,
                           duals=y_user, iterations=iterations,
                           wall_time=time.perf_counter() - t0)


def solve_lp(problem: OptProblem, eps_strict: float = EPS_STRICT,
             max_iter: int = MAX_PIVOTS) -> OptSolution:
    """Solve an LP, ignoring any integrality markings."""
    return DenseLP(problem, eps_strict=eps_strict).solve(max_iter=max_iter)
