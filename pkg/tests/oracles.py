"""Independent reference computations for the test suite.

Nothing here imports the code under test beyond plain data containers.
"""

import itertools
import math

import numpy as np
from scipy.optimize import linprog


def ldp_brute(rows):
    rows = np.asarray(rows, dtype=float)
    best = 0.0
    n_s, n_x = rows.shape
    for x in range(n_x):
        for s in range(n_s):
            for t in range(n_s):
                a, b = rows[s, x], rows[t, x]
                if a == 0 and b == 0:
                    continue
                if b == 0:
                    return math.inf
                if a > 0:
                    best = max(best, math.log2(a / b))
    return best


def loglift_brute(rows, p_s):
    rows = np.asarray(rows, dtype=float)
    n_s, n_x = rows.shape
    best, arg = 0.0, None
    for x in range(n_x):
        p_y = sum(rows[s, x] * p_s[s] for s in range(n_s))
        for s in range(n_s):
            if p_y == 0:
                continue
            if rows[s, x] == 0:
                return math.inf, (x, s)
            v = abs(math.log2(rows[s, x] / p_y))
            if v > best:
                best, arg = v, (x, s)
    return best, arg


def _realization_constraints(cond, p_x, alpha):
    """Target-realization rows and slice stochasticity over the full tensor."""
    n_s, n_x = cond.shape
    nv = n_s * n_x * n_x

    def idx(s, xi, xo):
        return (s * n_x + xi) * n_x + xo

    a_eq, b_eq = [], []
    for s in range(n_s):
        for xo in range(n_x):
            row = np.zeros(nv)
            for xi in range(n_x):
                row[idx(s, xi, xo)] = cond[s, xi]
            a_eq.append(row)
            b_eq.append((1 - alpha) * cond[s, xo] + alpha * p_x[xo])
        for xi in range(n_x):
            row = np.zeros(nv)
            for xo in range(n_x):
                row[idx(s, xi, xo)] = 1.0
            a_eq.append(row)
            b_eq.append(1.0)
    return np.array(a_eq), np.array(b_eq), idx


def full_tensor_lp(joint, alpha, cost):
    """Optimize a linear objective over ALL tensors P(y|s,x) realizing the target.

    ``cost(s, xi, xo)`` is the per-unit coefficient of tensor entry (s, xi, xo);
    the objective is minimized. Returns (optimum, tensor).
    """
    p = np.asarray(joint.p)
    p_s = p.sum(axis=1)
    p_x = p.sum(axis=0)
    cond = p / p_s[:, None]
    n_s, n_x = cond.shape
    a_eq, b_eq, idx = _realization_constraints(cond, p_x, alpha)
    c = np.zeros(n_s * n_x * n_x)
    for s, xi, xo in itertools.product(range(n_s), range(n_x), range(n_x)):
        c[idx(s, xi, xo)] = cost(s, xi, xo)
    res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=(0, 1), method="highs")
    assert res.status == 0, res.message
    return res.fun, res.x.reshape(n_s, n_x, n_x)


def max_diag_lp(joint, alpha):
    """max sum_{s,x} P_{S,X}(s,x) P(x|s,x) over all realizing tensors."""
    p = np.asarray(joint.p)
    val, tensor = full_tensor_lp(joint, alpha, lambda s, xi, xo: -p[s, xi] if xi == xo else 0.0)
    return -val, tensor


def min_distortion_lp(joint, alpha, d):
    p = np.asarray(joint.p)
    return full_tensor_lp(joint, alpha, lambda s, xi, xo: p[s, xi] * d[xi, xo])


def single_diag_max(joint, alpha, s0, x0):
    """Largest value P(x0|s0,x0) can take over all realizing tensors."""
    n_x = joint.p.shape[1]
    val, _ = full_tensor_lp(joint, alpha, lambda s, xi, xo: -1.0 if (s, xi, xo) == (s0, x0, x0) else 0.0)
    return -val


def vertex_enumeration(c, a_eq, b_eq):
    """min c@x, a_eq@x = b_eq, x >= 0 by trying every basis. Bounded LPs only."""
    c, a_eq, b_eq = (np.asarray(v, dtype=float) for v in (c, a_eq, b_eq))
    m, n = a_eq.shape
    rank = np.linalg.matrix_rank(a_eq)
    if np.linalg.matrix_rank(np.column_stack([a_eq, b_eq])) > rank:
        return None
    # keep an independent subset of rows
    rows = []
    for r in range(m):
        if np.linalg.matrix_rank(a_eq[rows + [r]]) > len(rows):
            rows.append(r)
    a, b = a_eq[rows], b_eq[rows]
    best = None
    for cols in itertools.combinations(range(n), len(rows)):
        sub = a[:, cols]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        xb = np.linalg.solve(sub, b)
        if np.any(xb < -1e-9):
            continue
        x = np.zeros(n)
        x[list(cols)] = xb
        val = float(c @ x)
        if best is None or val < best:
            best = val
    return best
