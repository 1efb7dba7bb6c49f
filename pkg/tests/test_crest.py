import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riverevt.crest import excesses, extract_crests

levels_st = st.lists(st.floats(-50, 50, allow_nan=False), min_size=3, max_size=120)


def test_worked_example():
    c = extract_crests([0, 2, 0, -1, 3, 1, -2, 4, 0], reference=0)
    np.testing.assert_array_equal(c.crest_levels, [2, 3, 4])
    np.testing.assert_array_equal(c.crest_indices, [1, 4, 7])


def test_all_below_reference_is_empty():
    c = extract_crests([-3, -2, -1, -2], reference=0)
    assert c.empty and len(c) == 0


def test_value_equal_to_reference_counts_as_below():
    assert extract_crests([0, 0, 0], reference=0).empty


def test_monotone_rise():
    c = extract_crests([0, 1, 2, 3], reference=0)
    np.testing.assert_array_equal(c.crest_levels, [3])


def test_earliest_maximum_wins():
    c = extract_crests([0, 2, 2, 0], reference=0)
    np.testing.assert_array_equal(c.crest_indices, [1])


def test_mean_reference():
    c = extract_crests([1, 5, 1, 1, 6, 1], reference="mean")
    assert c.reference_level == pytest.approx(2.5)
    np.testing.assert_array_equal(c.crest_levels, [5, 6])


def test_short_segment():
    with pytest.raises(ValueError):
        extract_crests([1, 2])


@given(levels_st, st.floats(-10, 10))
def test_crests_exceed_reference(levels, ref):
    c = extract_crests(levels, ref)
    assert np.all(c.crest_levels > ref)
    assert np.all(np.diff(c.crest_indices) > 0)
    np.testing.assert_array_equal(np.asarray(levels)[c.crest_indices], c.crest_levels)


# quarter-metre grid keeps every shifted comparison exact
quarters = st.integers(-200, 200).map(lambda k: k / 4)


@given(st.lists(quarters, min_size=3, max_size=120), quarters, st.integers(-100, 100))
def test_translation_equivariance(levels, ref, shift):
    a = extract_crests(levels, ref)
    b = extract_crests(np.asarray(levels) + shift, ref + shift)
    np.testing.assert_array_equal(a.crest_indices, b.crest_indices)
    np.testing.assert_allclose(b.crest_levels, a.crest_levels + shift)


@given(levels_st, st.floats(-10, 10))
def test_one_crest_per_upcrossing(levels, ref):
    x = np.asarray(levels)
    # position before the first sample counts as at or below the reference
    prev_above = False
    count = 0
    for v in x:
        if v > ref and not prev_above:
            count += 1
        prev_above = v > ref
    assert len(extract_crests(x, ref)) == count


def test_excesses_direct():
    np.testing.assert_allclose(excesses([2, 3, 4], 2.5).excesses, [0.5, 1.5])


def test_excesses_above_all():
    assert len(excesses([2, 3, 4], 10)) == 0


def test_excess_matches_table_reconstruction():
    e = excesses([61.0], 57.6)
    np.testing.assert_allclose(e.excesses, [3.4], rtol=1e-12)


def test_excess_threshold_must_be_finite():
    with pytest.raises(ValueError):
        excesses([1.0], float("nan"))


@given(st.lists(st.floats(-50, 50), max_size=50), st.floats(-50, 50))
def test_excess_count(levels, u):
    e = excesses(levels, u)
    assert len(e) == sum(1 for h in levels if h > u)
    assert np.all(e.excesses > 0)
