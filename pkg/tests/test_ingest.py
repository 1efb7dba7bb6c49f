from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riverevt import ingest
from riverevt.ingest import (
    ParseError,
    cumulative_histogram,
    detect_change_point,
    deviation_series,
    histogram,
    parse_series,
    split_segments,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def series_of(levels, interval=10):
    dates = [date.fromordinal(date(2008, 7, 21).toordinal() + interval * k) for k in range(len(levels))]
    return ingest.WaterLevelSeries.from_arrays(dates, levels, interval)


class TestParse:
    def test_two_rows(self):
        s = parse_series("2008-07-21,57.1\n2008-07-31,57.3\n")
        assert len(s) == 2
        assert s.sampling_interval_days == 10
        assert list(s.levels) == [57.1, 57.3]
        assert s.parse_report.rejected_count == 0
        assert not s.parse_report.header

    def test_empty_stream(self):
        with pytest.raises(ParseError, match="no observations"):
            parse_series("")

    def test_one_malformed_level_of_five(self):
        text = ("date,level_m\n2008-07-21,57.1\n2008-07-31,57.3\n2008-08-10,abc\n"
                "2008-08-20,57.6\n2008-08-30,57.2\n")
        s = parse_series(text)
        assert len(s) == 4
        assert s.parse_report.header
        assert s.parse_report.rejected_count == 1
        bad = s.parse_report.rejected[0]
        assert bad.line_number == 4 and "non-numeric level" in bad.reason

    def test_unparseable_date_is_reported(self):
        s = parse_series("2008-07-21,57.1\n2008-13-45,57.0\n2008-07-31,57.3\n")
        assert len(s) == 2
        assert "unparseable date" in s.parse_report.rejected[0].reason

    def test_strict_mode_raises(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_series("2008-07-21,57.1\n2008-07-31,x\n2008-08-10,57.0\n", strict=True)

    def test_non_monotone_lists_lines(self):
        text = "2008-07-21,57.1\n2008-07-31,57.3\n2008-07-25,57.0\n2008-07-25,57.0\n"
        with pytest.raises(ParseError, match=r"lines \[3, 4\]"):
            parse_series(text)

    def test_header_with_reordered_columns_and_delimiter(self):
        text = "level_m;station;date\n57.1;A;2008-07-21\n57.3;A;2008-07-31\n"
        s = parse_series(text, ingest.RecordFormat(delimiter=";"))
        assert list(s.levels) == [57.1, 57.3]

    def test_explicit_interval(self):
        s = parse_series("2008-07-21,1\n2008-07-22,2\n", ingest.RecordFormat(sampling_interval_days=10))
        assert s.sampling_interval_days == 10

    def test_non_finite_level_rejected(self):
        s = parse_series("2008-07-21,1\n2008-07-31,nan\n2008-08-10,2\n")
        assert len(s) == 2 and s.parse_report.rejected_count == 1


class TestDeviation:
    @pytest.mark.parametrize("levels, mean, expected", [
        ([57, 58, 59], 58, [-1, 0, 1]),
        ([56.4] * 5, 56.4, [0] * 5),
        ([1, 2, 4, 9], 4, [-3, -2, 0, 5]),
    ])
    def test_examples(self, levels, mean, expected):
        d = deviation_series(levels)
        assert d.mean_level == pytest.approx(mean)
        np.testing.assert_allclose(d.deviations, expected, atol=1e-12)

    def test_empty(self):
        with pytest.raises(ValueError):
            deviation_series([])

    @given(st.lists(finite, min_size=1, max_size=200))
    def test_sums_to_zero(self, levels):
        d = deviation_series(levels)
        scale = max(1.0, float(np.mean(np.abs(levels))))
        assert abs(d.deviations.sum()) <= 1e-9 * len(levels) * scale


class TestHistogram:
    def test_direct_count(self):
        h = histogram([1, 1, 2, 3], [0.5, 1.5, 2.5, 3.5])
        np.testing.assert_allclose(h.probabilities, [0.5, 0.25, 0.25])

    def test_single_value(self):
        h = histogram([2.0], [1.0, 3.0])
        np.testing.assert_array_equal(h.probabilities, [1.0])

    def test_last_bin_right_closed(self):
        h = histogram([0.0, 1.0, 2.0], [0.0, 1.0, 2.0])
        np.testing.assert_allclose(h.probabilities, [1 / 3, 2 / 3])

    def test_uniform_law_of_large_numbers(self):
        x = np.random.default_rng(7).random(1000)
        h = histogram(x, np.linspace(0, 1, 11))
        assert np.all(np.abs(h.probabilities - 0.1) < 0.05)

    def test_value_outside_edges(self):
        with pytest.raises(ValueError, match="outside"):
            histogram([0.0, 5.0], [0.0, 1.0, 2.0])

    def test_edges_must_ascend(self):
        with pytest.raises(ValueError):
            histogram([1.0], [0.0, 2.0, 1.0])

    def test_fd_bin_count_is_clamped(self):
        x = np.random.default_rng(1).normal(size=50)
        assert 5 <= len(histogram(x).probabilities) <= 200
        wide = np.concatenate([np.random.default_rng(2).normal(size=5000), [1e6]])
        assert len(histogram(wide).probabilities) == 200

    @given(st.lists(finite, min_size=1, max_size=300))
    def test_probabilities_sum_to_one(self, values):
        h = histogram(values)
        assert np.all(h.probabilities >= 0)
        assert abs(h.probabilities.sum() - 1) < 1e-9
        assert np.all(np.diff(h.bin_edges) > 0)


class TestCumulative:
    def test_running_sum(self):
        h = ingest.Histogram(np.array([0.0, 1, 2, 3]), np.array([0.5, 0.25, 0.25]))
        np.testing.assert_allclose(cumulative_histogram(h).cumulative, [0.5, 0.75, 1.0])

    def test_single_bin(self):
        h = ingest.Histogram(np.array([0.0, 1.0]), np.array([1.0]))
        np.testing.assert_array_equal(cumulative_histogram(h).cumulative, [1.0])

    def test_zero_below_sample_minimum(self):
        x = np.array([56.5, 57.0, 58.0, 59.5])
        edges = np.arange(55.0, 60.01, 0.5)
        c = cumulative_histogram(histogram(x, edges))
        below = edges[1:] <= x.min()
        assert np.all(c.cumulative[below] == 0)

    @given(st.lists(finite, min_size=1, max_size=300))
    def test_nondecreasing(self, values):
        c = cumulative_histogram(histogram(values)).cumulative
        assert np.all(np.diff(c) >= 0)
        assert abs(c[-1] - 1) < 1e-9


class TestSplit:
    def bounds(self, segs):
        return [(s.start_index, s.end_index) for s in segs]

    def test_split_no_gap(self):
        assert self.bounds(split_segments(10, [5])) == [(0, 4), (5, 9)]

    def test_split_with_gap(self):
        assert self.bounds(split_segments(10, [5], gap=1)) == [(0, 3), (7, 9)]

    def test_no_split(self):
        assert self.bounds(split_segments(10)) == [(0, 9)]

    def test_accepts_series(self):
        assert self.bounds(split_segments(series_of([1, 2, 3, 4]), [2])) == [(0, 1), (2, 3)]

    @pytest.mark.parametrize("splits", [[0], [10], [6, 3], [4, 4], [-1]])
    def test_bad_splits(self, splits):
        with pytest.raises(ValueError):
            split_segments(10, splits)

    def test_gap_swallowing_segment(self):
        with pytest.raises(ValueError, match="empty segment"):
            split_segments(10, [2], gap=3)

    @given(st.integers(10, 200).flatmap(lambda n: st.tuples(
        st.just(n), st.sets(st.integers(1, n - 1), max_size=3), st.integers(0, 2))))
    def test_segments_disjoint_and_in_bounds(self, args):
        n, splits, gap = args
        try:
            segs = split_segments(n, sorted(splits), gap)
        except ValueError:
            return
        covered = [i for s in segs for i in range(s.start_index, s.end_index + 1)]
        assert len(covered) == len(set(covered))
        assert all(0 <= i < n for i in covered)


def cusum_by_enumeration(x):
    n = len(x)
    total = sum(x)
    return [abs(sum(x[:k]) - k / n * total) for k in range(1, n)]


class TestChangePoint:
    def test_step(self):
        x = [0, 0, 0, 5, 5, 5]
        stat = cusum_by_enumeration(x)
        assert int(np.argmax(stat)) + 1 == 3
        assert detect_change_point(x).index == 3

    def test_constant(self):
        cp = detect_change_point([56.4] * 6)
        assert not cp.found and cp.index is None and cp.score == 0

    def test_tie_goes_to_smaller_index(self):
        x = [0, 0, 5, 5, 0, 0]
        stat = cusum_by_enumeration(x)
        assert stat[1] == pytest.approx(stat[3]) and stat[1] == pytest.approx(max(stat))
        assert detect_change_point(x).index == 2

    def test_statistic_matches_enumeration(self):
        x = list(np.random.default_rng(3).normal(size=40))
        cp = detect_change_point(x)
        np.testing.assert_allclose(cp.statistic, cusum_by_enumeration(x), atol=1e-9)
        assert cp.score == pytest.approx(max(cusum_by_enumeration(x)) / np.std(x))

    def test_too_short(self):
        with pytest.raises(ValueError):
            detect_change_point([1, 2, 3])

    @settings(max_examples=50)
    @given(st.integers(4, 60), st.floats(-1e3, 1e3), st.integers(0, 2 ** 31))
    def test_location_invariance(self, n, offset, seed):
        x = np.random.default_rng(seed).normal(size=n)
        x[n // 2:] += 3.0
        assert detect_change_point(x).index == detect_change_point(x + offset).index
