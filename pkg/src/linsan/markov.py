"""Markov (S-blind) randomization realizing the linear-reduction channel.

Keep the input with probability 1 - alpha, otherwise redraw from P_X:

    P_{Y|X}(x|x') = (1 - alpha) [x == x'] + alpha P_X(x)

Composing with any P_{X|S} whose marginal is P_X yields exactly
(1 - alpha) P_{X|S} + alpha P_X, whatever the rank of P_{X|S}.
"""

from __future__ import annotations

import numpy as np

from .dist import Alphabet, _frozen, as_dist
from .errors import DimensionMismatch, RowNotStochastic
from .reduction import check_alpha
from .utility import _as_distortion


class MarkovMechanism:
    """Row-stochastic P_{Y|X}; ``rows[x_in, x_out]``."""

    family = "markov"

    def __init__(self, x_alphabet: Alphabet, rows, alpha: float | None = None):
        rows = np.asarray(rows, dtype=float)
        if rows.shape != (len(x_alphabet), len(x_alphabet)):
            raise DimensionMismatch(f"mechanism shape {rows.shape} does not match alphabet")
        if np.any(rows < 0) or np.any(np.abs(rows.sum(axis=1) - 1.0) > 1e-12):
            raise RowNotStochastic("mechanism rows must be probability vectors")
        self.x_alphabet = x_alphabet
        self.rows = _frozen(rows)
        self.alpha = alpha

    def __repr__(self):
        return f"MarkovMechanism(alpha={self.alpha}, rows={self.rows.tolist()})"

    def lift(self, s_alphabet: Alphabet):
        """The same randomization as an S-indexed tensor that ignores S."""
        from .nonmarkov import Mechanism

        tensor = np.broadcast_to(self.rows, (len(s_alphabet),) + self.rows.shape)
        return Mechanism(s_alphabet, self.x_alphabet, tensor, alpha=self.alpha, family=self.family)


def markov_mechanism(p_x, alpha, x_alphabet: Alphabet | None = None) -> MarkovMechanism:
    a = check_alpha(alpha)
    p_x = as_dist(p_x, tol=1e-9)
    n = p_x.size
    rows = (1.0 - a) * np.eye(n) + a * np.broadcast_to(p_x, (n, n))
    # exact row sums regardless of how P_X was rounded
    rows = rows / rows.sum(axis=1, keepdims=True)
    if x_alphabet is None:
        x_alphabet = Alphabet.range(n, "x")
    return MarkovMechanism(x_alphabet, rows, alpha=a)


def markov_expected_distortion(p_x, alpha, d) -> float:
    """alpha * sum over x != x' of P_X(x) P_X(x') d(x', x)."""
    a = check_alpha(alpha)
    p_x = as_dist(p_x, tol=1e-9)
    d = _as_distortion(d)
    if d.shape != (p_x.size, p_x.size):
        raise DimensionMismatch("distortion does not match P_X")
    return a * float(p_x @ d @ p_x)


def markov_dtv(p_x, alpha, convention: str = "half") -> float:
    """alpha (1 - sum P_X^2), doubled under the full-l1 convention."""
    a = check_alpha(alpha)
    p_x = as_dist(p_x, tol=1e-9)
    half = a * (1.0 - float(p_x @ p_x))
    if convention == "half":
        return half
    if convention == "full":
        return 2.0 * half
    raise ValueError(f"convention must be 'half' or 'full', got {convention!r}")
