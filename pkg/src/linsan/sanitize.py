"""Estimate joints from records and push records through a mechanism."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .dist import Alphabet, JointDistribution
from .errors import DimensionMismatch, EmptyInput
from .markov import MarkovMechanism
from .nonmarkov import Mechanism

RNG_ID = "numpy.random.PCG64"


class Record(NamedTuple):
    s: str
    x: str


def _encode(records: Iterable, s_alphabet: Alphabet, x_alphabet: Alphabet):
    s_idx, x_idx = [], []
    for s, x in records:
        s_idx.append(s_alphabet.index(s))
        x_idx.append(x_alphabet.index(x))
    return np.array(s_idx, dtype=np.intp), np.array(x_idx, dtype=np.intp)


def estimate_joint(records: Sequence, s_alphabet: Alphabet, x_alphabet: Alphabet) -> JointDistribution:
    """Empirical joint frequencies. Unobserved declared symbols raise DeadSymbol."""
    s_idx, x_idx = _encode(records, s_alphabet, x_alphabet)
    if s_idx.size == 0:
        raise EmptyInput("no records")
    counts = np.zeros((len(s_alphabet), len(x_alphabet)))
    np.add.at(counts, (s_idx, x_idx), 1.0)
    return JointDistribution(s_alphabet, x_alphabet, counts / s_idx.size)


class Sanitizer:
    """Draws one output label per (s, x) record by inverse-CDF sampling.

    Outputs depend only on the seed and the record sequence, including when
    the records arrive over several calls. Not thread-safe: give each worker
    its own instance and seed.
    """

    rng_id = RNG_ID

    def __init__(self, mechanism: Mechanism | MarkovMechanism, seed: int, s_alphabet: Alphabet | None = None):
        if isinstance(mechanism, MarkovMechanism):
            if s_alphabet is None:
                raise DimensionMismatch("a Markov mechanism needs the S alphabet to read records")
            mechanism = mechanism.lift(s_alphabet)
        self.mechanism = mechanism
        self.seed = int(seed)
        self.draw_count = 0
        self._rng = np.random.Generator(np.random.PCG64(self.seed))
        self._cdf = np.cumsum(mechanism.tensor, axis=2)

    def sanitize(self, records: Iterable) -> list[str]:
        m = self.mechanism
        s_idx, x_idx = _encode(records, m.s_alphabet, m.x_alphabet)
        u = self._rng.random(s_idx.size)
        self.draw_count += s_idx.size
        cdf = self._cdf[s_idx, x_idx]
        y = (u[:, None] >= cdf).sum(axis=1)
        y = np.minimum(y, len(m.x_alphabet) - 1)
        labels = m.x_alphabet.labels
        return [labels[i] for i in y]


def sanitize(state: Sanitizer, records: Iterable) -> list[str]:
    return state.sanitize(records)


def sample_records(j: JointDistribution, n: int, seed: int) -> list[Record]:
    """i.i.d. (s, x) draws from ``j``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    flat = rng.choice(j.p.size, size=n, p=j.p.ravel())
    s_idx, x_idx = np.divmod(flat, j.shape[1])
    return [Record(j.s_alphabet[s], j.x_alphabet[x]) for s, x in zip(s_idx, x_idx)]
