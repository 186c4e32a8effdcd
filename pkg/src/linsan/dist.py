"""Finite joint distributions over a secret S and a public attribute X."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DeadSymbol,
    DimensionMismatch,
    NegativeEntry,
    RowNotStochastic,
    SumNotOne,
    UnknownLabel,
    ValidationError,
)

INPUT_TOL = 1e-9


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free symbol labels. Position is the symbol index."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable):
        labels = tuple(str(v) for v in labels)
        if not labels:
            raise ValidationError("alphabet must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValidationError(f"alphabet labels are not distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def range(cls, n: int, prefix: str = "") -> "Alphabet":
        return cls(f"{prefix}{i + 1}" for i in range(n))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def index(self, label) -> int:
        try:
            return self._lookup[str(label)]
        except KeyError:
            raise UnknownLabel(f"label {label!r} not in alphabet {list(self.labels)}") from None

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def as_dist(values, tol: float = 1e-12) -> np.ndarray:
    """Validate a probability vector and return it as a read-only float array."""
    p = np.asarray(values, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionMismatch("a distribution must be a nonempty vector")
    if np.any(p < 0):
        raise NegativeEntry("distribution has a negative entry")
    if abs(p.sum() - 1.0) > tol:
        raise SumNotOne(f"distribution sums to {p.sum()!r}")
    return _frozen(p)


class JointDistribution:
    """Validated joint law P_{S,X}, rows indexed by S and columns by X.

    Immutable. Marginals and conditionals are computed once on first use.
    """

    def __init__(self, s_alphabet: Alphabet, x_alphabet: Alphabet, p):
        p = np.asarray(p, dtype=float)
        if p.shape != (len(s_alphabet), len(x_alphabet)):
            raise DimensionMismatch(
                f"joint has shape {p.shape}, alphabets need "
                f"{(len(s_alphabet), len(x_alphabet))}"
            )
        if not np.all(np.isfinite(p)):
            raise ValidationError("joint has a non-finite entry")
        if np.any(p < 0):
            raise NegativeEntry("joint has a negative entry")
        total = p.sum()
        if abs(total - 1.0) > INPUT_TOL:
            raise SumNotOne(f"joint sums to {total!r}, not 1")
        p = p / total
        dead_s = [s_alphabet[i] for i in np.flatnonzero(p.sum(axis=1) <= 0)]
        dead_x = [x_alphabet[i] for i in np.flatnonzero(p.sum(axis=0) <= 0)]
        if dead_s or dead_x:
            raise DeadSymbol(f"zero-probability symbols: S={dead_s} X={dead_x}")
        self.s_alphabet = s_alphabet
        self.x_alphabet = x_alphabet
        self.p = _frozen(p)

    def __repr__(self):
        return (
            f"JointDistribution(S={list(self.s_alphabet)}, "
            f"X={list(self.x_alphabet)}, p={self.p.tolist()})"
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.p.shape

    @cached_property
    def p_s(self) -> np.ndarray:
        return _frozen(self.p.sum(axis=1))

    @cached_property
    def p_x(self) -> np.ndarray:
        return _frozen(self.p.sum(axis=0))

    @cached_property
    def x_given_s(self) -> np.ndarray:
        """P_{X|S} as an |S| x |X| row-stochastic matrix."""
        return _frozen(self.p / self.p_s[:, None])

    @cached_property
    def s_given_x(self) -> np.ndarray:
        """P_{S|X} as an |X| x |S| row-stochastic matrix (row x, column s)."""
        return _frozen((self.p / self.p_x[None, :]).T)


def from_joint(s_labels: Sequence | Alphabet, x_labels: Sequence | Alphabet, p) -> JointDistribution:
    s = s_labels if isinstance(s_labels, Alphabet) else Alphabet(s_labels)
    x = x_labels if isinstance(x_labels, Alphabet) else Alphabet(x_labels)
    return JointDistribution(s, x, p)


def from_conditional(
    p_x_given_s,
    p_s,
    s_labels: Sequence | Alphabet | None = None,
    x_labels: Sequence | Alphabet | None = None,
) -> JointDistribution:
    """Build P_{S,X}(s, x) = P_S(s) P_{X|S}(x|s).

    Rows of ``p_x_given_s`` must each sum to one within 1e-9. Labels default
    to ``s1, s2, ...`` and ``x1, x2, ...``.
    """
    cond = np.asarray(p_x_given_s, dtype=float)
    if cond.ndim != 2:
        raise DimensionMismatch("conditional must be a matrix")
    if np.any(cond < 0):
        raise NegativeEntry("conditional has a negative entry")
    row_sums = cond.sum(axis=1)
    bad = np.flatnonzero(np.abs(row_sums - 1.0) > INPUT_TOL)
    if bad.size:
        raise RowNotStochastic(f"rows {bad.tolist()} sum to {row_sums[bad].tolist()}")
    p_s = np.asarray(p_s, dtype=float)
    if p_s.shape != (cond.shape[0],):
        raise DimensionMismatch("P_S length does not match conditional rows")
    if np.any(p_s < 0):
        raise NegativeEntry("P_S has a negative entry")
    if abs(p_s.sum() - 1.0) > INPUT_TOL:
        raise SumNotOne(f"P_S sums to {p_s.sum()!r}")
    cond = cond / row_sums[:, None]
    s = s_labels if s_labels is not None else Alphabet.range(cond.shape[0], "s")
    x = x_labels if x_labels is not None else Alphabet.range(cond.shape[1], "x")
    return from_joint(s, x, p_s[:, None] * cond)


def marginal_x(j: JointDistribution) -> np.ndarray:
    return j.p_x


def marginal_s(j: JointDistribution) -> np.ndarray:
    return j.p_s


def cond_x_given_s(j: JointDistribution) -> np.ndarray:
    return j.x_given_s


def cond_s_given_x(j: JointDistribution) -> np.ndarray:
    return j.s_given_x


def example1() -> JointDistribution:
    """The four-symbol, two-secret dataset used throughout the demos and tests."""
    return from_conditional(
        [[0.2, 0.1, 0.5, 0.2], [0.5, 0.3, 0.1, 0.1]],
        [0.3, 0.7],
        s_labels=Alphabet(["1", "2"]),
        x_labels=Alphabet(["a", "b", "c", "d"]),
    )
