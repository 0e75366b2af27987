"""
Dense revised simplex for small standard-form programs

    minimize c @ x  subject to  A @ x = b,  x >= 0

with few rows and many columns. Pricing is Dantzig's rule (most negative
reduced cost); after a run of degenerate pivots it switches to Bland's rule
(smallest eligible index enters, smallest basic index leaves on ties) until
the objective moves again, which rules out cycling under the heavy
degeneracy of max-min problems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPError(RuntimeError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class LPResult:
    x: np.ndarray
    fun: float
    dual: np.ndarray
    iterations: int


DEGENERATE_RUN = 20


def _iterate(A, b, cost, basis, allowed, tol, max_iter):
    """Phase loop. ``basis`` is modified in place; returns iterations used."""
    rows = A.shape[0]
    stalled = 0
    for it in range(max_iter):
        B = A[:, basis]
        Binv = np.linalg.inv(B)
        y = cost[basis] @ Binv
        reduced = cost - y @ A
        reduced[basis] = 0.0
        eligible = np.flatnonzero((reduced < -tol) & allowed)
        if eligible.size == 0:
            return it
        if stalled >= DEGENERATE_RUN:
            enter = int(eligible[0])
        else:
            enter = int(eligible[np.argmin(reduced[eligible])])
        d = Binv @ A[:, enter]
        xb = Binv @ b
        pos = d > tol
        if not pos.any():
            raise Unbounded("objective unbounded below")
        ratios = np.full(rows, np.inf)
        ratios[pos] = xb[pos] / d[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * max(1.0, abs(best)))
        leave = min(ties, key=lambda r: basis[r])
        stalled = stalled + 1 if best <= tol else 0
        basis[leave] = enter
    raise LPError(f"no convergence in {max_iter} iterations")


def solve_standard_form(c, A, b, tol: float = 1e-11, max_iter: int = 100_000) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    rows, cols = A.shape
    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)

    # phase 1: artificial identity block appended after the real columns
    A1 = np.hstack([A, np.eye(rows)])
    cost1 = np.concatenate([np.zeros(cols), np.ones(rows)])
    basis = list(range(cols, cols + rows))
    allowed = np.ones(cols + rows, dtype=bool)
    it1 = _iterate(A1, b, cost1, basis, allowed, tol, max_iter)
    xb = np.linalg.solve(A1[:, basis], b)
    if cost1[basis] @ xb > 1e-9 * max(1.0, np.abs(b).sum()):
        raise Infeasible("phase 1 ended with positive infeasibility")

    # drive zero-level artificials out of the basis; drop redundant rows
    keep_rows = list(range(rows))
    for pos in range(rows):
        if basis[pos] < cols:
            continue
        Binv = np.linalg.inv(A1[:, basis])
        row = Binv[pos] @ A
        candidates = [j for j in np.flatnonzero(np.abs(row) > 1e-9) if j not in basis]
        if candidates:
            basis[pos] = int(candidates[0])
        else:
            keep_rows.remove(pos)
    if len(keep_rows) < rows:
        basis = [basis[r] for r in keep_rows]
        A, b = A[keep_rows], b[keep_rows]
        flip = flip[keep_rows]

    allowed = np.ones(cols, dtype=bool)
    it2 = _iterate(A, b, c, basis, allowed, tol, max_iter)
    Binv = np.linalg.inv(A[:, basis])
    x = np.zeros(cols)
    x[basis] = Binv @ b
    y = c[basis] @ Binv
    dual = np.zeros(rows)
    dual[keep_rows] = np.where(flip, -y, y)
    return LPResult(x=x, fun=float(c @ x), dual=dual, iterations=it1 + it2)


def maximin(values: np.ndarray, basis: np.ndarray, tol: float = 1e-11) -> tuple[float, np.ndarray]:
    """max over coefficients c of min_k (values[k] + basis[k] @ c).

    Solved through the dual: minimize values @ lam over the probability
    simplex subject to basis.T @ lam = 0. The optimal dual multipliers of
    that program are (t, -c).
    """
    values = np.asarray(values, dtype=float)
    basis = np.asarray(basis, dtype=float)
    k = basis.shape[1]
    A = np.vstack([np.ones(values.size), basis.T])
    b = np.zeros(k + 1)
    b[0] = 1.0
    res = solve_standard_form(values, A, b, tol=tol)
    coeffs = -res.dual[1:]
    return float(res.dual[0]), coeffs
