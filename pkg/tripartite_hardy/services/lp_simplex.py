"""
Dense two-phase tableau simplex for ``A x = b, x >= 0`` with Bland's rule:
the entering column is the smallest index with a negative reduced cost, ties in
the ratio test go to the smallest basic index.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tripartite_hardy.utils.constants import PIVOT_TOL
from tripartite_hardy.utils.errors import DimensionMismatchError, LPNumericalFailureError

REDUCED_COST_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LPResult:
    feasible: bool
    x: Optional[np.ndarray]
    margin: float
    objective: Optional[float]
    pivots: int


def _pivot(T: np.ndarray, row: int, col: int):
    T[row, :] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row, :])


def _entering(cost_row: np.ndarray, allowed: np.ndarray) -> int:
    candidates = np.flatnonzero((cost_row[:-1] < -REDUCED_COST_TOL) & allowed)
    return int(candidates[0]) if candidates.size else -1


def _leaving(T: np.ndarray, basis: list, col: int) -> int:
    best_row, best_ratio = -1, np.inf
    for i in range(T.shape[0] - 1):
        a = T[i, col]
        if a <= PIVOT_TOL:
            continue
        ratio = T[i, -1] / a
        if ratio < best_ratio - 1e-14 or (abs(ratio - best_ratio) <= 1e-14 and basis[i] < basis[best_row]):
            best_row, best_ratio = i, ratio
    return best_row


def _run(T: np.ndarray, basis: list, allowed: np.ndarray, max_pivots: int) -> int:
    for pivots in range(max_pivots):
        col = _entering(T[-1], allowed)
        if col == -1:
            return pivots
        row = _leaving(T, basis, col)
        if row == -1:
            # phase 1 is bounded below by zero; only phase 2 can get here
            raise LPNumericalFailureError(verboseMessage=f"unbounded direction at column {col}")
        _pivot(T, row, col)
        basis[row] = col
    raise LPNumericalFailureError(verboseMessage=f"{max_pivots} pivots without reaching an optimum")


def _drive_out_artificials(T: np.ndarray, basis: list, n: int):
    """Pivot basic artificials onto real columns; drop rows where that is impossible."""
    keep = []
    for i, var in enumerate(basis):
        if var < n:
            keep.append(i)
            continue
        real = np.flatnonzero(np.abs(T[i, :n]) > PIVOT_TOL)
        if real.size:
            _pivot(T, i, int(real[0]))
            basis[i] = int(real[0])
            keep.append(i)
    rows = keep + [T.shape[0] - 1]
    return T[rows], [basis[i] for i in keep]


def lp_feasibility(A_eq, b_eq, tol: float = 1e-7, cost=None, max_pivots: Optional[int] = None) -> LPResult:
    """
    Phase 1 minimizes the sum of artificial slacks. The system is feasible
    when that optimum is at most ``tol``; the optimum is returned as ``margin``.
    With ``cost`` given, phase 2 minimizes cost @ x over the feasible set.
    """
    A = np.array(A_eq, dtype=float)
    b = np.array(b_eq, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != b.size:
        raise DimensionMismatchError(f"Constraint matrix {A.shape} does not match right-hand side {b.shape}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise DimensionMismatchError("Constraints must be finite")

    m, n = A.shape
    if max_pivots is None:
        max_pivots = 50 * (m + n)

    negative = b < 0
    A[negative] *= -1
    b[negative] *= -1

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n, n + m))

    allowed = np.ones(n + m, dtype=bool)
    pivots = _run(T, basis, allowed, max_pivots)
    margin = max(float(-T[-1, -1]), 0.0)

    if margin > tol:
        logging.debug(f"Phase 1 optimum {margin:.3e} after {pivots} pivots: infeasible")
        return LPResult(feasible=False, x=None, margin=margin, objective=None, pivots=pivots)

    objective = None
    if cost is not None:
        cost = np.asarray(cost, dtype=float)
        if cost.shape != (n,):
            raise DimensionMismatchError(f"Cost vector must have length {n}")
        T, basis = _drive_out_artificials(T, basis, n)
        T = np.delete(T, np.s_[n:n + m], axis=1)
        T[-1, :] = 0.0
        T[-1, :n] = cost
        for i, var in enumerate(basis):
            T[-1] -= cost[var] * T[i]
        pivots += _run(T, basis, np.ones(n, dtype=bool), max_pivots)
        objective = float(-T[-1, -1])

    x = np.zeros(n)
    for i, var in enumerate(basis):
        if var < n:
            x[var] = max(T[i, -1], 0.0)

    logging.debug(f"Feasible after {pivots} pivots, phase 1 optimum {margin:.3e}")
    return LPResult(feasible=True, x=x, margin=margin, objective=objective, pivots=pivots)
