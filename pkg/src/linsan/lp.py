"""Small dense linear programs: two-phase primal simplex with Bland's rule.

Problems here are transportation polytopes with a few dozen variables and
are nearly always degenerate, so Bland's lowest-index rule is used for both
the entering and the leaving variable. That makes every solve deterministic
and cycle-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NumericalBreakdown

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

PIVOT_TOL = 1e-11
EQ_TOL = 1e-9
# entries below this after a pivot are rounding residue
NOISE_TOL = 1e-13


@dataclass
class LinearProgram:
    """minimize c @ x  s.t.  a_eq @ x == b_eq,  lo <= x <= hi.

    ``lo`` defaults to 0 and must be finite; ``hi`` defaults to +inf.
    """

    c: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        n = self.c.size
        self.a_eq = np.asarray(self.a_eq, dtype=float).reshape(-1, n) if n else np.zeros((0, 0))
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        if self.a_eq.shape[0] != self.b_eq.size:
            raise DimensionMismatch(
                f"{self.a_eq.shape[0]} constraint rows but {self.b_eq.size} right-hand sides"
            )
        self.lo = np.zeros(n) if self.lo is None else np.broadcast_to(np.asarray(self.lo, float), (n,)).copy()
        self.hi = np.full(n, np.inf) if self.hi is None else np.broadcast_to(np.asarray(self.hi, float), (n,)).copy()
        for name in ("c", "a_eq", "b_eq", "lo"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise DimensionMismatch(f"{name} must be finite")
        if np.any(np.isnan(self.hi)) or np.any(self.hi < self.lo):
            raise DimensionMismatch("need lo <= hi for every variable")

    @property
    def n_vars(self) -> int:
        return self.c.size


@dataclass
class LpSolution:
    status: str
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    objective_value: float = float("nan")
    iterations: int = 0

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Canonical-form tableau: rows [A | b] with a basis, plus one cost row."""

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.t = np.hstack([a, b[:, None]])
        self.basis = basis
        self.iterations = 0

    def pivot(self, row: int, col: int):
        t = self.t
        t[row] /= t[row, col]
        col_vals = t[:, col].copy()
        col_vals[row] = 0.0
        t -= np.outer(col_vals, t[row])
        t[np.abs(t) < NOISE_TOL] = 0.0
        t[:, col] = 0.0
        t[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        cb = cost[self.basis]
        return cost - cb @ self.t[:, :-1]

    def run(self, cost: np.ndarray, allowed: np.ndarray, max_iter: int) -> str:
        """Minimize ``cost`` over the current feasible basis (Bland's rule)."""
        scale = max(1.0, float(np.abs(cost).max(initial=0.0)))
        while True:
            if self.iterations > max_iter:
                raise NumericalBreakdown(f"simplex exceeded {max_iter} pivots")
            rc = self.reduced_costs(cost)
            candidates = np.flatnonzero(allowed & (rc < -PIVOT_TOL * scale))
            if candidates.size == 0:
                return OPTIMAL
            col = int(candidates[0])
            column = self.t[:, col]
            rhs = self.t[:, -1]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                if np.any(column > 0):
                    raise NumericalBreakdown(
                        f"entering column {col} has only pivots below {PIVOT_TOL}"
                    )
                return UNBOUNDED
            ratios = np.maximum(rhs[rows], 0.0) / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-14 * max(1.0, best)]
            row = int(min(tied, key=lambda r: self.basis[r]))
            self.pivot(row, col)


def _standard_form(lp: LinearProgram):
    """Shift to x' = x - lo >= 0 and turn finite upper bounds into rows."""
    n = lp.n_vars
    b = lp.b_eq - lp.a_eq @ lp.lo
    a = lp.a_eq
    bounded = np.flatnonzero(np.isfinite(lp.hi))
    k = bounded.size
    if k:
        top = np.hstack([a, np.zeros((a.shape[0], k))])
        ub = np.zeros((k, n + k))
        ub[np.arange(k), bounded] = 1.0
        ub[np.arange(k), n + np.arange(k)] = 1.0
        a = np.vstack([top, ub])
        b = np.concatenate([b, lp.hi[bounded] - lp.lo[bounded]])
    c = np.concatenate([lp.c, np.zeros(k)])
    return a, b, c


def solve(lp: LinearProgram, max_iter: int = 50_000) -> LpSolution:
    n = lp.n_vars
    a, b, c = _standard_form(lp)
    m, n_std = a.shape
    if m == 0:
        # Only bounds: every variable sits at whichever bound its cost prefers.
        if np.any((c[:n] < 0) & ~np.isfinite(lp.hi)):
            return LpSolution(UNBOUNDED)
        x = np.where(c[:n] < 0, lp.hi, lp.lo)
        return LpSolution(OPTIMAL, x, float(lp.c @ x))

    a, b = a.copy(), b.copy()
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    # Phase 1: one artificial per row.
    tab = _Tableau(np.hstack([a, np.eye(m)]), b, list(range(n_std, n_std + m)))
    cost1 = np.concatenate([np.zeros(n_std), np.ones(m)])
    allowed = np.ones(n_std + m, dtype=bool)
    tab.run(cost1, allowed, max_iter)
    infeas = float(tab.t[:, -1] @ cost1[tab.basis])
    if infeas > EQ_TOL * max(1.0, float(np.abs(b).max())):
        return LpSolution(INFEASIBLE, iterations=tab.iterations)

    # Drive zero-level artificials out of the basis; rows that cannot be
    # pivoted on are linear combinations of the others and are dropped.
    keep = []
    for r in range(m):
        if tab.basis[r] < n_std:
            keep.append(r)
            continue
        row = tab.t[r, :n_std]
        cols = np.flatnonzero(np.abs(row) > PIVOT_TOL)
        if cols.size:
            tab.pivot(r, int(cols[0]))
            keep.append(r)
    tab.t = np.hstack([tab.t[keep, :n_std], tab.t[keep, -1:]])
    tab.basis = [tab.basis[r] for r in keep]

    status = tab.run(c, np.ones(n_std, dtype=bool), max_iter)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, iterations=tab.iterations)

    x_std = np.zeros(n_std)
    x_std[tab.basis] = tab.t[:, -1]
    x = np.clip(x_std[:n] + lp.lo, lp.lo, lp.hi)
    return LpSolution(OPTIMAL, x, float(lp.c @ x), tab.iterations)


def max_eq_residual(lp: LinearProgram, x) -> float:
    if lp.b_eq.size == 0:
        return 0.0
    return float(np.abs(lp.a_eq @ np.asarray(x) - lp.b_eq).max())
