"""Privacy leakage of a channel P_{Y|S}: local differential privacy and log-lift.

Logarithms are base 2 unless ``base="nats"`` is passed. A structural zero
facing a positive probability gives ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import JointDistribution, as_dist
from .reduction import SoftChannel, baseline_channel, check_alpha, linear_reduce

BASES = {"bits": math.log(2.0), "nats": 1.0}


def _log_unit(base: str) -> float:
    try:
        return BASES[base]
    except KeyError:
        raise ValueError(f"base must be one of {sorted(BASES)}, got {base!r}") from None


def _rows(channel) -> np.ndarray:
    if isinstance(channel, SoftChannel):
        return channel.rows
    return np.asarray(channel, dtype=float)


@dataclass(frozen=True)
class PrivacyReport:
    ldp: float
    log_lift: float
    ldp_first_order: float
    loglift_first_order: float
    # (x label, s label) attaining the log-lift
    loglift_argmax: tuple[str, str]
    base: str = "bits"


def ldp(channel, base: str = "bits") -> float:
    """max over x, s, s' of log P(x|s) / P(x|s')."""
    rows = _rows(channel)
    unit = _log_unit(base)
    best = 0.0
    for col in rows.T:
        hi, lo = col.max(), col.min()
        if hi == 0.0:
            continue
        if lo == 0.0:
            return math.inf
        best = max(best, math.log(hi / lo) / unit)
    return best


def log_lift_with_witness(channel, p_s, base: str = "bits") -> tuple[float, tuple[int, int]]:
    """Log-lift and the (x, s) index pair attaining it.

    Ties keep the first pair in (x, s) order.
    """
    rows = _rows(channel)
    p_s = as_dist(p_s, tol=1e-9)
    p_y = p_s @ rows
    unit = _log_unit(base)
    best, arg = 0.0, (0, 0)
    n_s, n_x = rows.shape
    for x in range(n_x):
        if p_y[x] == 0.0:
            continue
        for s in range(n_s):
            if rows[s, x] == 0.0:
                return math.inf, (x, s)
            v = abs(math.log(rows[s, x] / p_y[x])) / unit
            if v > best:
                best, arg = v, (x, s)
    return best, arg


def log_lift(channel, p_s, base: str = "bits") -> float:
    return log_lift_with_witness(channel, p_s, base)[0]


def ldp_first_order(j: JointDistribution, alpha, base: str = "bits") -> float:
    """(1 - alpha) times the LDP of the unrandomized release."""
    return (1.0 - check_alpha(alpha)) * ldp(j.x_given_s, base)


def loglift_first_order(j: JointDistribution, alpha, base: str = "bits") -> float:
    return (1.0 - check_alpha(alpha)) * log_lift(j.x_given_s, j.p_s, base)


def _ldp_linearized(channel, p_s) -> float:
    # log(1 + t) ~ t applied to the LDP maximand; scales exactly by (1 - alpha)
    # under linear reduction, which is what makes the first-order forms linear.
    rows = _rows(channel)
    p_y = as_dist(p_s, tol=1e-9) @ rows
    spread = rows.max(axis=0) - rows.min(axis=0)
    return float(np.max(spread / p_y))


def l1_deviation(channel, p_s) -> np.ndarray:
    """|P_{Y|S}(x|s) - P_Y(x)| as an |S| x |X| matrix."""
    rows = _rows(channel)
    p_y = as_dist(p_s, tol=1e-9) @ rows
    return np.abs(rows - p_y[None, :])


def conditional_variance(channel, p_s) -> np.ndarray:
    """Var over S of P_{Y|S}(x|S) for each x."""
    rows = _rows(channel)
    p_s = as_dist(p_s, tol=1e-9)
    p_y = p_s @ rows
    return p_s @ (rows - p_y[None, :]) ** 2


def privacy_report(j: JointDistribution, alpha=None, base: str = "bits") -> PrivacyReport:
    """Leakage of the release at reduction level ``alpha``.

    With ``alpha=None`` the unrandomized release Y = X is reported and the
    first-order fields equal the exact values.
    """
    if alpha is None:
        channel, shrink = baseline_channel(j), 1.0
    else:
        channel, shrink = linear_reduce(j, alpha), 1.0 - check_alpha(alpha)
    ll, (x, s) = log_lift_with_witness(channel, j.p_s, base)
    return PrivacyReport(
        ldp=ldp(channel, base),
        log_lift=ll,
        ldp_first_order=shrink * ldp(j.x_given_s, base),
        loglift_first_order=shrink * log_lift(j.x_given_s, j.p_s, base),
        loglift_argmax=(j.x_alphabet[x], j.s_alphabet[s]),
        base=base,
    )
