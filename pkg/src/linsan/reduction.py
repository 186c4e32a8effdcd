"""Linear-reduction target channel P_{Y|S} = (1 - alpha) P_{X|S} + alpha P_X."""

from __future__ import annotations

import numpy as np

from .dist import Alphabet, JointDistribution, _frozen, as_dist
from .errors import AlphaOutOfRange, DimensionMismatch, RowNotStochastic

ROW_TOL = 1e-12


def check_alpha(alpha) -> float:
    """Return ``alpha`` as a float, requiring 0 < alpha <= 1."""
    a = float(alpha)
    if not (0.0 < a <= 1.0):
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha!r}")
    return a


class SoftChannel:
    """Row-stochastic matrix P_{Y|S}(y|s); the output alphabet is the X alphabet."""

    def __init__(self, s_alphabet: Alphabet, y_alphabet: Alphabet, rows, tol: float = ROW_TOL):
        rows = np.asarray(rows, dtype=float)
        if rows.shape != (len(s_alphabet), len(y_alphabet)):
            raise DimensionMismatch(f"channel shape {rows.shape} does not match alphabets")
        if np.any(rows < 0) or np.any(rows > 1 + tol):
            raise RowNotStochastic("channel entries must lie in [0, 1]")
        sums = rows.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > tol):
            raise RowNotStochastic(f"channel rows sum to {sums.tolist()}")
        self.s_alphabet = s_alphabet
        self.y_alphabet = y_alphabet
        self.rows = _frozen(rows)

    def __repr__(self):
        return f"SoftChannel(rows={self.rows.tolist()})"

    def output_marginal(self, p_s) -> np.ndarray:
        return as_dist(p_s, tol=1e-9) @ self.rows


def linear_reduce(j: JointDistribution, alpha) -> SoftChannel:
    a = check_alpha(alpha)
    rows = (1.0 - a) * j.x_given_s + a * j.p_x[None, :]
    return SoftChannel(j.s_alphabet, j.x_alphabet, rows)


def baseline_channel(j: JointDistribution) -> SoftChannel:
    """The unrandomized release Y = X, i.e. P_{Y|S} = P_{X|S}."""
    return SoftChannel(j.s_alphabet, j.x_alphabet, j.x_given_s)


def induced_joint(channel: SoftChannel, p_s) -> JointDistribution:
    """P_{S,Y}(s, y) = P_S(s) P_{Y|S}(y|s)."""
    p_s = as_dist(p_s, tol=1e-9)
    return JointDistribution(channel.s_alphabet, channel.y_alphabet, p_s[:, None] * channel.rows)
