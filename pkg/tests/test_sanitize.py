import numpy as np
import pytest

from linsan import (
    Alphabet,
    Record,
    Sanitizer,
    estimate_joint,
    linear_reduce,
    markov_mechanism,
    sanitize,
    tv_optimal_mechanism,
)
from linsan.errors import DeadSymbol, DimensionMismatch, EmptyInput, UnknownLabel
from linsan.sanitize import RNG_ID, sample_records


def test_estimate_joint_counts():
    s, x = Alphabet(["1", "2"]), Alphabet(["a", "b"])
    recs = [Record("1", "a"), Record("1", "b"), Record("2", "a"), Record("2", "a")]
    j = estimate_joint(recs, s, x)
    np.testing.assert_allclose(j.p, [[0.25, 0.25], [0.5, 0.0]])


def test_estimate_joint_errors():
    s, x = Alphabet(["1", "2"]), Alphabet(["a", "b"])
    with pytest.raises(EmptyInput):
        estimate_joint([], s, x)
    with pytest.raises(DeadSymbol):
        estimate_joint([Record("1", "a")], s, x)
    with pytest.raises(UnknownLabel):
        estimate_joint([Record("3", "a")], s, x)


def test_sample_records_frequencies(ex1):
    recs = sample_records(ex1, 50_000, seed=1)
    j = estimate_joint(recs, ex1.s_alphabet, ex1.x_alphabet)
    assert np.abs(j.p - ex1.p).max() < 0.01


def test_identity_mechanism_is_passthrough(ex1):
    lifted = markov_mechanism(ex1.p_x, 1.0, ex1.x_alphabet)
    # alpha = 1 output ignores the input: frequencies follow P_X
    recs = sample_records(ex1, 20_000, seed=2)
    ys = Sanitizer(lifted, seed=3, s_alphabet=ex1.s_alphabet).sanitize(recs)
    freq = np.array([ys.count(lab) for lab in ex1.x_alphabet]) / len(ys)
    assert np.abs(freq - ex1.p_x).max() < 0.015


def test_markov_needs_s_alphabet(ex1):
    with pytest.raises(DimensionMismatch):
        Sanitizer(markov_mechanism(ex1.p_x, 0.5, ex1.x_alphabet), seed=0)


def test_reproducible_and_streaming(ex1):
    m = tv_optimal_mechanism(ex1, 0.5)
    recs = sample_records(ex1, 1000, seed=4)
    whole = Sanitizer(m, seed=7).sanitize(recs)
    assert whole == Sanitizer(m, seed=7).sanitize(recs)
    st = Sanitizer(m, seed=7)
    parts = sanitize(st, recs[:300]) + sanitize(st, recs[300:])
    assert parts == whole
    assert st.draw_count == 1000
    assert Sanitizer(m, seed=8).sanitize(recs) != whole
    assert st.rng_id == RNG_ID


def test_deterministic_rows_are_kept(ex1):
    # s=1 inputs a and b are never changed at alpha=0.5
    m = tv_optimal_mechanism(ex1, 0.5)
    recs = [Record("1", "a")] * 200 + [Record("1", "b")] * 200
    ys = Sanitizer(m, seed=0).sanitize(recs)
    assert ys == ["a"] * 200 + ["b"] * 200


def test_nonmarkov_end_to_end(ex1):
    m = tv_optimal_mechanism(ex1, 0.5)
    recs = sample_records(ex1, 100_000, seed=11)
    ys = Sanitizer(m, seed=12).sanitize(recs)
    out = estimate_joint([Record(r.s, y) for r, y in zip(recs, ys)], ex1.s_alphabet, ex1.x_alphabet)
    assert np.abs(out.x_given_s - linear_reduce(ex1, 0.5).rows).max() < 0.01
