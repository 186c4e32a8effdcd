"""Utility loss of a release channel P_{Y|X}.

Total variation to the identity channel comes in two conventions that differ
by exactly a factor of two:

* ``dtv_half = 1 - sum_x P_X(x) P_{Y|X}(x|x)``
* ``dtv_full = sum_{x, x'} P_X(x') |P_{Y|X}(x|x') - [x == x']|``

Tradeoff sweeps report both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dist import _frozen, as_dist
from .errors import DimensionMismatch, InvalidDistortion
from .privacy import _log_unit


class DistortionMatrix:
    """Nonnegative cost d(x_in, x_out) with a zero diagonal."""

    def __init__(self, d):
        d = np.asarray(d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidDistortion(f"distortion must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise InvalidDistortion("distortion has a non-finite entry")
        if np.any(d < 0):
            raise InvalidDistortion("distortion has a negative entry")
        if np.any(np.diag(d) != 0):
            raise InvalidDistortion("distortion must vanish on the diagonal")
        self.d = _frozen(d)

    @classmethod
    def hamming(cls, n: int) -> "DistortionMatrix":
        return cls(1.0 - np.eye(n))

    def __len__(self):
        return self.d.shape[0]

    def __repr__(self):
        return f"DistortionMatrix({self.d.tolist()})"


def _as_distortion(d) -> np.ndarray:
    return d.d if isinstance(d, DistortionMatrix) else DistortionMatrix(d).d


def _channel(channel) -> np.ndarray:
    rows = getattr(channel, "rows", channel)
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
        raise DimensionMismatch(f"P_Y|X must be square, got shape {rows.shape}")
    return rows


@dataclass(frozen=True)
class UtilityReport:
    dtv_half: float
    dtv_full: float
    expected_distortion: float
    mutual_information_bits: float
    entropy_x_bits: float
    utility_loss_bits: float


def dtv(channel, p_x) -> tuple[float, float]:
    """Return ``(dtv_half, dtv_full)`` of ``channel`` against the identity."""
    rows = _channel(channel)
    p_x = as_dist(p_x, tol=1e-9)
    half = 1.0 - float(p_x @ np.diag(rows))
    full = float(p_x @ np.abs(rows - np.eye(rows.shape[0])).sum(axis=1))
    return half, full


def expected_distortion(channel, p_x, d) -> float:
    rows = _channel(channel)
    d = _as_distortion(d)
    if d.shape != rows.shape:
        raise InvalidDistortion(f"distortion shape {d.shape} does not match channel {rows.shape}")
    p_x = as_dist(p_x, tol=1e-9)
    return float(p_x @ (rows * d).sum(axis=1))


def entropy(p, base: str = "bits") -> float:
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum() / _log_unit(base))


def mutual_information(channel, p_x, base: str = "bits") -> float:
    rows = _channel(channel)
    p_x = as_dist(p_x, tol=1e-9)
    p_y = p_x @ rows
    joint = p_x[:, None] * rows
    mask = joint > 0
    ratio = rows[mask] / np.broadcast_to(p_y, rows.shape)[mask]
    mi = float((joint[mask] * np.log(ratio)).sum() / _log_unit(base))
    return max(mi, 0.0)


def utility_report(channel, p_x, d=None) -> UtilityReport:
    """All utility measures; ``d`` defaults to Hamming distortion."""
    rows = _channel(channel)
    if d is None:
        d = DistortionMatrix.hamming(rows.shape[0])
    half, full = dtv(rows, p_x)
    mi = mutual_information(rows, p_x)
    h = entropy(p_x)
    return UtilityReport(
        dtv_half=half,
        dtv_full=full,
        expected_distortion=expected_distortion(rows, p_x, d),
        mutual_information_bits=mi,
        entropy_x_bits=h,
        utility_loss_bits=max(h - mi, 0.0),
    )
