"""Numpy fallback for the dense simplex pivot loop.

Shares its contract with the compiled kernel in ``_simplex_c``: ``run``
iterates pivots on a dense tableau in place and reports why it stopped.
The tableau layout is rows 0..m-1 for constraints, the last row for
reduced costs, and the last column for the rhs.  ``basis`` maps each
constraint row to its basic column and is updated in place.

Entering rule: Dantzig (most negative reduced cost) while the objective
makes progress, switching to Bland's rule (smallest index) after a run of
degenerate pivots so cycling cannot occur.  Dantzig keeps the pivot count
low, which also keeps accumulated floating-point error low; Bland alone
can stall for tens of thousands of degenerate pivots and drift badly.
"""
from __future__ import annotations

import numpy as np

STOP_OPTIMAL = 0
STOP_UNBOUNDED = 1
STOP_ITER_LIMIT = 2

STALL_LIMIT = 200


def run(T: np.ndarray, basis: np.ndarray, n_enterable: int,
        max_iter: int, tol: float = 1e-9) -> tuple[int, int]:
    """Pivot until optimal, unbounded, or the iteration cap is hit.

    Only the first ``n_enterable`` columns may enter the basis.  Leaving
    row: minimum ratio; ties go to the largest pivot element (stability)
    under Dantzig and to the smallest basic column index under Bland.
    """
    m = T.shape[0] - 1
    rhs = T[:m, -1]
    stall = 0
    last_obj = T[-1, -1]
    for it in range(max_iter):
        reduced = T[-1, :n_enterable]
        bland = stall >= STALL_LIMIT
        if bland:
            neg = np.nonzero(reduced < -tol)[0]
            if neg.size == 0:
                return STOP_OPTIMAL, it
            j = int(neg[0])
        else:
            j = int(np.argmin(reduced))
            if reduced[j] >= -tol:
                return STOP_OPTIMAL, it

        col = T[:m, j]
        pos = np.nonzero(col > tol)[0]
        if pos.size == 0:
            return STOP_UNBOUNDED, it
        ratios = rhs[pos] / col[pos]
        best = ratios.min()
        tied = pos[ratios <= best + 1e-12]
        if bland:
            r = int(tied[np.argmin(basis[tied])])
        else:
            r = int(tied[np.argmax(col[tied])])

        piv_row = T[r]
        piv_row /= piv_row[j]
        col_copy = T[:, j].copy()
        col_copy[r] = 0.0
        T -= np.outer(col_copy, piv_row)
        T[:, j] = 0.0
        T[r, j] = 1.0
        basis[r] = j

        obj = T[-1, -1]
        if obj > last_obj + tol:
            stall = 0
            last_obj = obj
        else:
            stall += 1
    return STOP_ITER_LIMIT, max_iter
