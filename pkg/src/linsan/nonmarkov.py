"""Secret-aware randomization P_{Y|S,X} realizing the linear-reduction channel.

For each secret value s the symbols split into

    plus(s)  = {x : P_X(x) >= P_{X|S}(x|s)}   (under-represented, receive mass)
    minus(s) = {x : P_X(x) <  P_{X|S}(x|s)}   (over-represented, give mass)

An optimal mechanism keeps as much of each input in place as the target
allows: inputs in plus(s) are never changed, inputs x' in minus(s) keep
probability 1 - alpha (1 - P_X(x') / P_{X|S}(x'|s)) and send the rest to
plus(s). What is left is a transportation problem per s, moving

    supply(x') = alpha (P_{X|S}(x'|s) - P_X(x'))   for x' in minus(s)
    demand(x)  = alpha (P_X(x) - P_{X|S}(x|s))     for x in plus(s)

of joint mass. Any feasible flow minimizes total variation; a cost-weighted
flow minimizes expected distortion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dist import Alphabet, JointDistribution, _frozen
from .errors import DimensionMismatch, InvalidDistortion, LpInfeasible, RowNotStochastic
from .lp import LinearProgram, solve
from .reduction import SoftChannel, check_alpha
from .utility import DistortionMatrix, _as_distortion

REALIZATION_TOL = 1e-9
# P_{X|S} and P_X within this are treated as equal (rounding ties)
TIE_TOL = 1e-13

TV = "nonmarkov_tv"
DISTORTION = "nonmarkov_distortion"


@dataclass(frozen=True)
class SupportPartition:
    """Per-secret index sets; ``plus[s]`` and ``minus[s]`` partition range(|X|)."""

    plus: tuple[tuple[int, ...], ...]
    minus: tuple[tuple[int, ...], ...]


class Mechanism:
    """Tensor P_{Y|S,X} indexed ``tensor[s, x_in, x_out]``."""

    def __init__(
        self,
        s_alphabet: Alphabet,
        x_alphabet: Alphabet,
        tensor,
        alpha: float | None = None,
        family: str | None = None,
        tol: float = REALIZATION_TOL,
    ):
        tensor = np.asarray(tensor, dtype=float)
        n_s, n_x = len(s_alphabet), len(x_alphabet)
        if tensor.shape != (n_s, n_x, n_x):
            raise DimensionMismatch(f"tensor shape {tensor.shape}, expected {(n_s, n_x, n_x)}")
        if np.any(tensor < -tol) or np.any(tensor > 1 + tol):
            raise RowNotStochastic("mechanism entries must lie in [0, 1]")
        if np.any(np.abs(tensor.sum(axis=2) - 1.0) > tol):
            raise RowNotStochastic("each (s, x_in) slice must sum to one")
        self.s_alphabet = s_alphabet
        self.x_alphabet = x_alphabet
        self.tensor = _frozen(tensor)
        self.alpha = alpha
        self.family = family

    def __repr__(self):
        return f"Mechanism(family={self.family!r}, alpha={self.alpha}, shape={self.tensor.shape})"


def partition_supports(j: JointDistribution) -> SupportPartition:
    cond, p_x = j.x_given_s, j.p_x
    plus = tuple(tuple(np.flatnonzero(p_x >= row - TIE_TOL).tolist()) for row in cond)
    minus = tuple(tuple(np.flatnonzero(p_x < row - TIE_TOL).tolist()) for row in cond)
    return SupportPartition(plus, minus)


def saturated_diagonal(j: JointDistribution, alpha) -> np.ndarray:
    """Largest feasible P(x|s, x) for every (s, x): min{1 - a(1 - P_X/P_{X|S}), 1}."""
    a = check_alpha(alpha)
    cond, p_x = j.x_given_s, j.p_x
    diag = np.ones_like(cond)
    over = p_x[None, :] < cond - TIE_TOL
    diag[over] = 1.0 - a * (1.0 - (p_x[None, :] / np.where(over, cond, 1.0))[over])
    return diag


def _supply_demand(j: JointDistribution, s: int, a: float, part: SupportPartition):
    cond, p_x = j.x_given_s[s], j.p_x
    minus, plus = list(part.minus[s]), list(part.plus[s])
    supply = a * (cond[minus] - p_x[minus])
    demand = a * (p_x[plus] - cond[plus])
    return minus, plus, supply, demand


def _assemble(j: JointDistribution, a: float, flows: list, family: str) -> Mechanism:
    """Build the tensor from saturated diagonals and per-s cross-block flows.

    ``flows[s]`` is an |minus(s)| x |plus(s)| array of joint mass (conditional
    on s) moved from x' to x.
    """
    part = partition_supports(j)
    diag = saturated_diagonal(j, a)
    n_s, n_x = j.shape
    tensor = np.zeros((n_s, n_x, n_x))
    for s in range(n_s):
        tensor[s][np.diag_indices(n_x)] = diag[s]
        minus, plus = part.minus[s], part.plus[s]
        if minus:
            cond = j.x_given_s[s]
            block = flows[s] / cond[list(minus), None]
            tensor[s][np.ix_(minus, plus)] = block
    return Mechanism(j.s_alphabet, j.x_alphabet, tensor, alpha=a, family=family)


def tv_optimal_mechanism(j: JointDistribution, alpha) -> Mechanism:
    """Total-variation optimal mechanism with proportional cross-block completion.

    The cross block is underdetermined. Flow from x' to x is set to
    supply(x') demand(x) / total, which is nonnegative, feasible and does not
    depend on how symbols are ordered.
    """
    a = check_alpha(alpha)
    part = partition_supports(j)
    flows = []
    for s in range(j.shape[0]):
        _, _, supply, demand = _supply_demand(j, s, a, part)
        total = supply.sum()
        if total > 0:
            flows.append(np.outer(supply, demand) / total)
        else:
            flows.append(np.zeros((supply.size, demand.size)))
    return _assemble(j, a, flows, TV)


def transport_lp(j: JointDistribution, s: int, alpha, d) -> tuple[LinearProgram, float]:
    """Cross-block LP for secret ``s`` over normalized flows.

    Variables are flow(x', x) / total for x' in minus(s), x in plus(s), laid
    out row-major. Returns the LP and ``total``; the expected-distortion
    contribution of a solution is ``P_S(s) * total * objective``.
    """
    a = check_alpha(alpha)
    d = _as_distortion(d)
    part = partition_supports(j)
    minus, plus, supply, demand = _supply_demand(j, s, a, part)
    total = float(supply.sum())
    k, m = len(minus), len(plus)
    a_eq = np.zeros((k + m, k * m))
    for i in range(k):
        a_eq[i, i * m:(i + 1) * m] = 1.0
    for c in range(m):
        a_eq[k + c, c::m] = 1.0
    if total > 0:
        b_eq = np.concatenate([supply, demand]) / total
    else:
        b_eq = np.zeros(k + m)
    cost = d[np.ix_(minus, plus)].ravel()
    return LinearProgram(cost, a_eq, b_eq), total


def distortion_optimal_mechanism(j: JointDistribution, alpha, d) -> Mechanism:
    """Minimize expected distortion over mechanisms with saturated diagonals.

    One transportation LP per secret value, solved with the package simplex.
    """
    a = check_alpha(alpha)
    d = _as_distortion(d)
    if d.shape != (j.shape[1], j.shape[1]):
        raise InvalidDistortion(f"distortion shape {d.shape} does not match |X| = {j.shape[1]}")
    part = partition_supports(j)
    flows = []
    for s in range(j.shape[0]):
        k, m = len(part.minus[s]), len(part.plus[s])
        if k == 0 or m == 0:
            flows.append(np.zeros((k, m)))
            continue
        lp, total = transport_lp(j, s, a, d)
        sol = solve(lp)
        if not sol.ok:
            raise LpInfeasible(f"cross-block LP for s={j.s_alphabet[s]} returned {sol.status}")
        flows.append(np.clip(sol.values, 0.0, None).reshape(k, m) * total)
    return _assemble(j, a, flows, DISTORTION)


def cross_block_system(j: JointDistribution, s: int, alpha) -> tuple[np.ndarray, np.ndarray]:
    """Linear system on the conditional cross-block entries for secret ``s``.

    Unknowns are P(x | s, x') for x' in minus(s), x in plus(s), row-major in
    x'. The first |plus(s)| rows fix the mass received by each x; the rest fix
    the mass leaving each x'. The rows always carry one linear dependency.
    """
    a = check_alpha(alpha)
    part = partition_supports(j)
    minus, plus = list(part.minus[s]), list(part.plus[s])
    cond, p_x = j.x_given_s[s], j.p_x
    k, m = len(minus), len(plus)
    mat = np.zeros((m + k, k * m))
    rhs = np.zeros(m + k)
    for c, x in enumerate(plus):
        for i, xp in enumerate(minus):
            mat[c, i * m + c] = cond[xp]
        rhs[c] = -a * (cond[x] - p_x[x])
    for i, xp in enumerate(minus):
        mat[m + i, i * m:(i + 1) * m] = 1.0
        rhs[m + i] = a * (1.0 - p_x[xp] / cond[xp])
    return mat, rhs


def induced_channel(m: Mechanism, j: JointDistribution) -> np.ndarray:
    """P_{Y|X}(x|x') = sum_s P_{Y|S,X}(x|s,x') P_{S|X}(s|x'), as rows[x', x]."""
    _check_compatible(m, j)
    return np.einsum("xs,sxy->xy", j.s_given_x, m.tensor)


def realized_channel(m: Mechanism, j: JointDistribution) -> SoftChannel:
    """The P_{Y|S} a mechanism actually produces on data distributed as ``j``."""
    _check_compatible(m, j)
    rows = np.einsum("sx,sxy->sy", j.x_given_s, m.tensor)
    return SoftChannel(j.s_alphabet, j.x_alphabet, rows, tol=REALIZATION_TOL)


@dataclass(frozen=True)
class RealizationReport:
    constraint_residual: float
    stochastic_residual: float
    min_entry: float
    tol: float = REALIZATION_TOL

    @property
    def passed(self) -> bool:
        return (
            self.constraint_residual <= self.tol
            and self.stochastic_residual <= self.tol
            and self.min_entry >= -self.tol
        )


def verify_realization(m: Mechanism, j: JointDistribution, alpha) -> RealizationReport:
    """Residuals of sum_x' P(x|s,x') P(x'|s) = (1-a) P(x|s) + a P_X(x)."""
    a = check_alpha(alpha)
    _check_compatible(m, j)
    target = (1.0 - a) * j.x_given_s + a * j.p_x[None, :]
    produced = np.einsum("sx,sxy->sy", j.x_given_s, m.tensor)
    return RealizationReport(
        constraint_residual=float(np.abs(produced - target).max()),
        stochastic_residual=float(np.abs(m.tensor.sum(axis=2) - 1.0).max()),
        min_entry=float(m.tensor.min()),
    )


def _check_compatible(m: Mechanism, j: JointDistribution):
    if m.tensor.shape != (j.shape[0], j.shape[1], j.shape[1]):
        raise DimensionMismatch(
            f"mechanism shape {m.tensor.shape} does not fit joint of shape {j.shape}"
        )
