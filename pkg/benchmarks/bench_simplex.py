"""Compare the compiled simplex kernel against the pure-Python fallback.

Solves the same batch of LPs (random dense problems plus the sequence-form
equilibrium LPs of the built-in games) with both kernels and reports wall
times. Run from the repository root:

    python3 benchmarks/bench_simplex.py [--repeats N] [--lps N]
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

import llgames.optim.simplex as simplex
from llgames.builders import build_kj, build_kuhn
from llgames.equilibrium import zero_sum_lp
from llgames.optim import OPTIMAL, OptProblem, solve_lp
from llgames.optim import _simplex_py


def random_lp(rng, n, m):
    p = OptProblem("bench", sense="min")
    for _ in range(n):
        ub = float(rng.integers(1, 10)) if rng.random() < 0.5 else math.inf
        p.add_var(lb=0.0, ub=ub, obj=float(rng.normal()))
    A = rng.normal(size=(m, n))
    b = rng.normal(size=m) * 2 + 1
    for i in range(m):
        p.add_constraint({j: float(A[i, j]) for j in range(n)}, "<=",
                         float(b[i]))
    return p


def problem_batch(num_random):
    rng = np.random.default_rng(0)
    batch = [random_lp(rng, int(rng.integers(10, 40)),
                       int(rng.integers(10, 40)))
             for _ in range(num_random)]
    for build in (build_kuhn, build_kj):
        p, _, _ = zero_sum_lp(build())
        batch.append(p)
    return batch


def run_with_kernel(kernel, batch, repeats):
    saved = simplex._kernel
    simplex._kernel = kernel
    try:
        t0 = time.perf_counter()
        objectives = []
        for _ in range(repeats):
            objectives = [solve_lp(p).objective for p in batch]
        return time.perf_counter() - t0, objectives
    finally:
        simplex._kernel = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--lps", type=int, default=30,
                    help="number of random LPs in the batch")
    args = ap.parse_args()

    batch = problem_batch(args.lps)
    sanity = [solve_lp(p).status for p in batch]
    solved = sum(1 for s in sanity if s == OPTIMAL)
    print(f"batch: {len(batch)} LPs ({solved} optimal), "
          f"repeats: {args.repeats}")
    print(f"active kernel: {simplex.KERNEL_NAME}")

    t_active, obj_active = run_with_kernel(simplex._kernel, batch,
                                           args.repeats)
    t_py, obj_py = run_with_kernel(_simplex_py, batch, args.repeats)

    diffs = [abs(a - b) for a, b in zip(obj_active, obj_py)
             if not (math.isnan(a) or math.isnan(b))]
    print(f"compiled kernel: {t_active:.3f}s")
    print(f"python fallback: {t_py:.3f}s")
    if t_active > 0:
        print(f"speedup: {t_py / t_active:.2f}x")
    print(f"max objective difference: {max(diffs) if diffs else 0.0:.2e}")


if __name__ == "__main__":
    main()
