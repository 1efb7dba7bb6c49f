"""
Reading level records, deviation series, histograms and segmentation.

The input is a delimited text table with a date column and a level column.
Rows that cannot be parsed are collected in a :class:`ParseReport` instead of
aborting the read.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable, Optional, Sequence, Union

import numpy as np

DEFAULT_SAMPLING_INTERVAL_DAYS = 10.0
MIN_BINS, MAX_BINS = 5, 200


class ParseError(ValueError):
    """Raised when a level table cannot be turned into a series."""


@dataclass(frozen=True)
class Observation:
    timestamp: date
    level: float

    def __post_init__(self):
        if not math.isfinite(self.level):
            raise ValueError(f"level must be finite, got {self.level!r}")


@dataclass(frozen=True)
class RejectedRow:
    line_number: int
    text: str
    reason: str


@dataclass(frozen=True)
class ParseReport:
    accepted: int
    rejected: tuple[RejectedRow, ...] = ()
    header: bool = False

    @property
    def rejected_count(self) -> int:
        return len(self.rejected)


@dataclass(frozen=True)
class WaterLevelSeries:
    observations: tuple[Observation, ...]
    sampling_interval_days: float = DEFAULT_SAMPLING_INTERVAL_DAYS
    parse_report: Optional[ParseReport] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.observations) < 2:
            raise ValueError("a series needs at least 2 observations")
        if not self.sampling_interval_days > 0:
            raise ValueError("sampling_interval_days must be positive")
        stamps = [o.timestamp for o in self.observations]
        bad = [i for i in range(1, len(stamps)) if stamps[i] <= stamps[i - 1]]
        if bad:
            raise ParseError(f"timestamps not strictly increasing at positions {bad}")

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def levels(self) -> np.ndarray:
        return np.array([o.level for o in self.observations], dtype=float)

    @property
    def timestamps(self) -> list[date]:
        return [o.timestamp for o in self.observations]

    @classmethod
    def from_arrays(cls, timestamps: Iterable[date], levels: Iterable[float],
                    sampling_interval_days: float = DEFAULT_SAMPLING_INTERVAL_DAYS):
        obs = tuple(Observation(t, float(v)) for t, v in zip(timestamps, levels))
        return cls(obs, sampling_interval_days)


@dataclass(frozen=True)
class RecordFormat:
    """Layout of a level table."""

    delimiter: str = ","
    date_column: str = "date"
    level_column: str = "level_m"
    # None infers the interval from the median spacing of the dates.
    sampling_interval_days: Optional[float] = None


def _parse_row(cells: Sequence[str], date_idx: int, level_idx: int) -> Observation:
    if len(cells) <= max(date_idx, level_idx):
        raise ValueError("too few columns")
    try:
        ts = date.fromisoformat(cells[date_idx].strip())
    except ValueError:
        raise ValueError(f"unparseable date {cells[date_idx].strip()!r}") from None
    try:
        level = float(cells[level_idx].strip())
    except ValueError:
        raise ValueError(f"non-numeric level {cells[level_idx].strip()!r}") from None
    if not math.isfinite(level):
        raise ValueError(f"non-finite level {cells[level_idx].strip()!r}")
    return Observation(ts, level)


def parse_series(text: Union[str, io.TextIOBase], fmt: RecordFormat = RecordFormat(),
                 strict: bool = False) -> WaterLevelSeries:
    """
    Parse a delimited level table into a :class:`WaterLevelSeries`.

    Parameters
    ----------
    text : str or file-like
        Table contents. A header row is optional and detected by trying to
        parse the first line as data.
    fmt : RecordFormat
        Column names and delimiter.
    strict : bool, optional
        Raise on the first malformed row instead of collecting it.

    Returns
    -------
    WaterLevelSeries
        Observations in file order; ``series.parse_report`` lists rejected rows.

    Raises
    ------
    ParseError
        No observations, or timestamps that do not strictly increase (the
        message lists the offending lines).
    """
    if not isinstance(text, str):
        text = text.read()
    rows = [(i + 1, r) for i, r in enumerate(csv.reader(io.StringIO(text), delimiter=fmt.delimiter))
            if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("no observations")

    date_idx, level_idx, header = 0, 1, False
    first = rows[0][1]
    try:
        _parse_row(first, 0, 1)
    except ValueError:
        names = [c.strip() for c in first]
        if fmt.date_column in names and fmt.level_column in names:
            date_idx, level_idx = names.index(fmt.date_column), names.index(fmt.level_column)
            header = True
            rows = rows[1:]

    obs: list[Observation] = []
    lines: list[int] = []
    rejected: list[RejectedRow] = []
    for line_no, cells in rows:
        try:
            obs.append(_parse_row(cells, date_idx, level_idx))
            lines.append(line_no)
        except ValueError as exc:
            if strict:
                raise ParseError(f"line {line_no}: {exc}") from None
            rejected.append(RejectedRow(line_no, fmt.delimiter.join(cells), str(exc)))

    if not obs:
        detail = f" ({len(rejected)} malformed row(s), first: {rejected[0].reason})" if rejected else ""
        raise ParseError("no observations" + detail)
    bad = [lines[i] for i in range(1, len(obs)) if obs[i].timestamp <= obs[i - 1].timestamp]
    if bad:
        raise ParseError(f"timestamps not strictly increasing at lines {bad}")
    if len(obs) < 2:
        raise ParseError("a series needs at least 2 observations")

    interval = fmt.sampling_interval_days
    if interval is None:
        gaps = np.diff([o.timestamp.toordinal() for o in obs])
        interval = float(np.median(gaps))
    report = ParseReport(accepted=len(obs), rejected=tuple(rejected), header=header)
    return WaterLevelSeries(tuple(obs), interval, report)


def read_series(path, fmt: RecordFormat = RecordFormat(), strict: bool = False) -> WaterLevelSeries:
    with open(path, newline="") as fh:
        return parse_series(fh.read(), fmt, strict)


@dataclass(frozen=True)
class DeviationSeries:
    deviations: np.ndarray
    mean_level: float


def deviation_series(series: Union[WaterLevelSeries, Sequence[float]]) -> DeviationSeries:
    """Level minus the arithmetic mean of all levels."""
    levels = series.levels if isinstance(series, WaterLevelSeries) else np.asarray(series, float)
    if levels.size == 0:
        raise ValueError("empty series")
    mean = float(np.mean(levels))
    return DeviationSeries(levels - mean, mean)


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    probabilities: np.ndarray


@dataclass(frozen=True)
class CumulativeHistogram:
    bin_edges: np.ndarray
    cumulative: np.ndarray


def freedman_diaconis_edges(values: np.ndarray) -> np.ndarray:
    """Freedman-Diaconis bin edges with the bin count clamped to [5, 200]."""
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    q75, q25 = np.percentile(values, [75, 25])
    width = 2.0 * (q75 - q25) / values.size ** (1 / 3)
    nbins = int(math.ceil((hi - lo) / width)) if width > 0 else MIN_BINS
    nbins = min(max(nbins, MIN_BINS), MAX_BINS)
    return np.linspace(lo, hi, nbins + 1)


def histogram(values: Sequence[float], bins: Union[str, int, Sequence[float]] = "fd") -> Histogram:
    """
    Relative-frequency histogram.

    Bins are half-open ``[edge_k, edge_k+1)`` except the last, which is closed
    so the sample maximum is counted once. `bins` is ``"fd"``, a bin count
    spanning the data range, or explicit ascending edges.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("values must be nonempty")
    if isinstance(bins, str):
        if bins != "fd":
            raise ValueError(f"unknown binning rule {bins!r}")
        edges = freedman_diaconis_edges(values)
    elif np.isscalar(bins):
        lo, hi = float(values.min()), float(values.max())
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        edges = np.linspace(lo, hi, int(bins) + 1)
    else:
        edges = np.asarray(bins, dtype=float)
        if edges.size < 2 or np.any(np.diff(edges) <= 0):
            raise ValueError("bin edges must be strictly ascending")
        outside = values[(values < edges[0]) | (values > edges[-1])]
        if outside.size:
            raise ValueError(f"{outside.size} value(s) outside the edge range, e.g. {outside[0]!r}")
    counts, _ = np.histogram(values, bins=edges)
    return Histogram(edges, counts / values.size)


def cumulative_histogram(h: Histogram) -> CumulativeHistogram:
    return CumulativeHistogram(h.bin_edges, np.cumsum(h.probabilities))


@dataclass(frozen=True)
class Segment:
    start_index: int
    end_index: int
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.start_index <= self.end_index:
            raise ValueError(f"invalid segment bounds [{self.start_index}, {self.end_index}]")

    def __len__(self) -> int:
        return self.end_index - self.start_index + 1

    def take(self, values):
        return values[self.start_index:self.end_index + 1]


def split_segments(series, splits: Optional[Sequence[int]] = None, gap: int = 0) -> list[Segment]:
    """
    Partition ``range(len(series))`` at the given split indices.

    Each split index is the first index of the new regime. With ``gap >= 1``
    the closed window ``[split - gap, split + gap]`` is treated as
    non-stationary and left out of both neighbours; ``gap = 0`` excludes
    nothing.
    """
    n = series if isinstance(series, int) else len(series)
    splits = list(splits or [])
    if gap < 0:
        raise ValueError("gap half-width must be nonnegative")
    if any(not 0 < s < n for s in splits):
        raise ValueError(f"split indices must lie in (0, {n}), got {splits}")
    if any(b <= a for a, b in zip(splits, splits[1:])):
        raise ValueError(f"split indices must be strictly ascending, got {splits}")

    bounds = []
    start = 0
    for s in splits:
        end, nxt = (s - 1, s) if gap == 0 else (s - gap - 1, s + gap + 1)
        bounds.append((start, end))
        start = nxt
    bounds.append((start, n - 1))
    if any(a > b or a < 0 or b >= n for a, b in bounds):
        raise ValueError(f"gap {gap} leaves an empty segment for splits {splits}")
    return [Segment(a, b, f"segment-{k + 1}") for k, (a, b) in enumerate(bounds)]


@dataclass(frozen=True)
class ChangePoint:
    """Single change point. ``index`` is None when the series is constant."""

    index: Optional[int]
    score: float
    statistic: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def found(self) -> bool:
        return self.index is not None


def detect_change_point(series, rel_tol: float = 1e-12) -> ChangePoint:
    """
    Locate a single mean shift with the CUSUM statistic ``|S_k - (k/n) S_n|``.

    The returned index is the first index of the new regime; ties go to the
    smaller index. The score is the CUSUM maximum divided by the standard
    deviation of the series.
    """
    x = series.levels if isinstance(series, WaterLevelSeries) else np.asarray(series, float)
    n = x.size
    if n < 4:
        raise ValueError("change-point detection needs at least 4 values")
    centered = x - x.mean()
    sd = float(np.std(x))
    if sd <= rel_tol * max(1.0, float(np.max(np.abs(x)))):
        return ChangePoint(None, 0.0)
    # S_k - (k/n) S_n == cumulative sum of the centered series
    stat = np.abs(np.cumsum(centered)[:-1])
    peak = stat.max()
    k = int(np.flatnonzero(stat >= peak - rel_tol * max(peak, sd))[0]) + 1
    return ChangePoint(k, float(peak / sd), stat)
