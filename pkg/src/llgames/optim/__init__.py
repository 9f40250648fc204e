"""LP/MIP backend: problem containers, dense simplex, branch and bound."""
from .problem import (BINARY, CONTINUOUS, EQ, GE, INFEASIBLE, ITER_LIMIT, LE,
                      NODE_LIMIT, OPTIMAL, UNBOUNDED, Constraint, OptProblem,
                      OptSolution, export_lp, parse_lp)
from .simplex import (DUALITY_TOL, EPS_STRICT, FEAS_TOL, KERNEL_NAME, DenseLP,
                      solve_lp)
from .bnb import INT_TOL, MIP_GAP, solve_mip

__all__ = [
    "BINARY", "CONTINUOUS", "EQ", "GE", "LE",
    "INFEASIBLE", "ITER_LIMIT", "NODE_LIMIT", "OPTIMAL", "UNBOUNDED",
    "Constraint", "OptProblem", "OptSolution", "export_lp", "parse_lp",
    "DUALITY_TOL", "EPS_STRICT", "FEAS_TOL", "INT_TOL", "MIP_GAP",
    "KERNEL_NAME", "DenseLP", "solve_lp", "solve_mip",
]
