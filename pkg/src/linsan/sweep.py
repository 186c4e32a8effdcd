"""Privacy-utility tradeoff curves over a grid of reduction levels."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence, TextIO

import numpy as np

from .dist import JointDistribution
from .errors import LpInfeasible, ParseError, ValidationError
from .markov import markov_mechanism
from .nonmarkov import (
    DISTORTION,
    TV,
    Mechanism,
    distortion_optimal_mechanism,
    induced_channel,
    tv_optimal_mechanism,
    verify_realization,
)
from .privacy import ldp, log_lift, ldp_first_order, loglift_first_order
from .reduction import check_alpha, linear_reduce
from .utility import DistortionMatrix, utility_report

MARKOV = "markov"
FAMILIES = (MARKOV, TV, DISTORTION)
THREADS_ENV = "LINSAN_THREADS"


@dataclass(frozen=True)
class TradeoffPoint:
    alpha: float
    ldp_y: float
    loglift_y: float
    ldp_approx: float
    loglift_approx: float
    dtv_half: float
    dtv_full: float
    expected_distortion: float
    mi_bits: float
    utility_loss_bits: float
    family: str


COLUMNS = tuple(f.name for f in fields(TradeoffPoint))


def build_mechanism(j: JointDistribution, alpha, family: str, d=None) -> Mechanism:
    if family == MARKOV:
        return markov_mechanism(j.p_x, alpha, j.x_alphabet).lift(j.s_alphabet)
    if family == TV:
        return tv_optimal_mechanism(j, alpha)
    if family == DISTORTION:
        if d is None:
            raise ValidationError("the nonmarkov_distortion family needs a distortion matrix")
        return distortion_optimal_mechanism(j, alpha, d)
    raise ValidationError(f"unknown family {family!r}; choose from {FAMILIES}")


def tradeoff_point(j: JointDistribution, alpha, family: str, d=None, base: str = "bits") -> TradeoffPoint:
    a = check_alpha(alpha)
    if d is None:
        d = DistortionMatrix.hamming(j.shape[1])
    m = build_mechanism(j, a, family, d)
    report = verify_realization(m, j, a)
    if not report.passed:
        raise LpInfeasible(f"{family} mechanism at alpha={a} misses the target channel: {report}")
    # every family realizes the same P_{Y|S}; use the exact target for privacy
    target = linear_reduce(j, a)
    u = utility_report(induced_channel(m, j), j.p_x, d)
    return TradeoffPoint(
        alpha=a,
        ldp_y=ldp(target, base),
        loglift_y=log_lift(target, j.p_s, base),
        ldp_approx=ldp_first_order(j, a, base),
        loglift_approx=loglift_first_order(j, a, base),
        dtv_half=u.dtv_half,
        dtv_full=u.dtv_full,
        expected_distortion=u.expected_distortion,
        mi_bits=u.mutual_information_bits,
        utility_loss_bits=u.utility_loss_bits,
        family=family,
    )


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def sweep(
    j: JointDistribution,
    alphas: Sequence[float],
    families: Iterable[str] = (MARKOV, TV),
    d=None,
    base: str = "bits",
    threads: int | None = None,
) -> list[TradeoffPoint]:
    """One point per (family, alpha), grouped by family, alpha ascending."""
    alphas = sorted({check_alpha(a) for a in alphas})
    families = list(families)
    for fam in families:
        if fam not in FAMILIES:
            raise ValidationError(f"unknown family {fam!r}; choose from {FAMILIES}")
    jobs = [(a, fam) for fam in families for a in alphas]
    n = _threads(threads)
    if n == 1:
        return [tradeoff_point(j, a, fam, d, base) for a, fam in jobs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda job: tradeoff_point(j, job[0], job[1], d, base), jobs))


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (stop included when hit) or a comma-separated list."""
    spec = spec.strip()
    try:
        if ":" in spec:
            start, stop, step = (float(v) for v in spec.split(":"))
            if step <= 0:
                raise ParseError(f"grid step must be positive: {spec!r}")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            values = [round(start + k * step, 12) for k in range(max(count, 0))]
        else:
            values = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"bad alpha grid {spec!r}") from None
    if not values:
        raise ParseError(f"alpha grid {spec!r} is empty")
    return [check_alpha(v) for v in values]


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return format(float(v), ".9g")


def write_tsv(stream: TextIO, points: Iterable[TradeoffPoint]) -> None:
    stream.write("\t".join(COLUMNS) + "\n")
    for p in points:
        stream.write("\t".join(_fmt(v) for v in astuple(p)) + "\n")


def read_tsv(stream: TextIO) -> list[TradeoffPoint]:
    lines = [ln.rstrip("\n") for ln in stream if ln.strip()]
    if not lines or tuple(lines[0].split("\t")) != COLUMNS:
        raise ParseError("not a tradeoff TSV: header mismatch")
    out = []
    for ln in lines[1:]:
        parts = ln.split("\t")
        out.append(TradeoffPoint(*(float(v) for v in parts[:-1]), parts[-1]))
    return out
