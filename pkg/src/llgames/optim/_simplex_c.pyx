# cython: language_level=3
"""Compiled dense simplex pivot loop; see _simplex_py for the contract."""

import numpy as np

cimport cython
cimport numpy as cnp

STOP_OPTIMAL = 0
STOP_UNBOUNDED = 1
STOP_ITER_LIMIT = 2

STALL_LIMIT = 200


@cython.boundscheck(False)
@cython.wraparound(False)
@cython.cdivision(True)
def run(cnp.float64_t[:, ::1] T, cnp.int64_t[::1] basis, int n_enterable,
        long max_iter, double tol=1e-9):
    cdef int m = T.shape[0] - 1
    cdef int ncols = T.shape[1]
    cdef int rhs_col = ncols - 1
    cdef long it
    cdef int i, j, k, r
    cdef int stall = 0
    cdef bint bland
    cdef double ratio, best, piv, factor, red, last_obj, obj

    last_obj = T[m, rhs_col]
    for it in range(max_iter):
        bland = stall >= STALL_LIMIT
        j = -1
        if bland:
            for k in range(n_enterable):
                if T[m, k] < -tol:
                    j = k
                    break
        else:
            red = -tol
            for k in range(n_enterable):
                if T[m, k] < red:
                    red = T[m, k]
                    j = k
        if j < 0:
            return STOP_OPTIMAL, it

        r = -1
        best = 0.0
        for i in range(m):
            if T[i, j] > tol:
                ratio = T[i, rhs_col] / T[i, j]
                if r < 0 or ratio < best - 1e-12:
                    r = i
                    best = ratio
                elif ratio <= best + 1e-12:
                    if bland:
                        if basis[i] < basis[r]:
                            r = i
                    elif T[i, j] > T[r, j]:
                        r = i
        if r < 0:
            return STOP_UNBOUNDED, it

        piv = T[r, j]
        for k in range(ncols):
            T[r, k] /= piv
        for i in range(m + 1):
            if i == r:
                continue
            factor = T[i, j]
            if factor != 0.0:
                for k in range(ncols):
                    T[i, k] -= factor * T[r, k]
        for i in range(m + 1):
            T[i, j] = 0.0
        T[r, j] = 1.0
        basis[r] = j

        obj = T[m, rhs_col]
        if obj > last_obj + tol:
            stall = 0
            last_obj = obj
        else:
            stall += 1
    return STOP_ITER_LIMIT, max_iter
