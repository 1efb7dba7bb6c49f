"""
Published Huang He (Yellow river) results used as a reference case.

Two Weibull tails were reported for crest excesses, before and after the
2014 drop of the water level, together with exceedance probabilities (in
percent) for levels 61-66 m and return periods for the 61 m level. The
thresholds behind the table were not published; :func:`reproduce_column`
recovers one from the 61 m entry and checks the remaining entries against it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .risk import RiskTable, ThresholdReconstruction, reconstruct_threshold, risk_table, tail_fit

SAMPLING_INTERVAL_DAYS = 10.0
LEVELS_M = (61.0, 62.0, 63.0, 64.0, 65.0, 66.0)


@dataclass(frozen=True)
class PublishedColumn:
    name: str
    rate: float
    shape: float
    probabilities_percent: tuple[float, ...]
    stated_return_periods_days: dict
    declustering_threshold_m: float


BEFORE_DROP = PublishedColumn(
    "before-drop", 1.135, 1.410,
    (0.170, 0.0104, 0.000484, 0.0000176, 0.000000516, 0.0000000123),
    {61.0: 5880.0},
    58.95,
)
AFTER_DROP = PublishedColumn(
    "after-drop", 1.280, 1.494,
    (0.00112, 0.0000176, 0.000000184, 0.00000000132, 0.00000000000672, 0.0000000000000247),
    {61.0: 89285.0},
    57.8,
)
COLUMNS = {c.name: c for c in (BEFORE_DROP, AFTER_DROP)}

# low-threshold theta level and the lowest recorded level, for data checks
LOW_THRESHOLD_THETA = 0.25
MINIMUM_LEVEL_M = 56.4


@dataclass(frozen=True)
class ColumnReproduction:
    column: PublishedColumn
    reconstruction: ThresholdReconstruction
    table: RiskTable

    @property
    def relative_errors(self) -> list[float]:
        return [abs(p * 100 / ref - 1) for p, ref in
                zip(self.table.probabilities, self.column.probabilities_percent)]


def reproduce_column(column: PublishedColumn, anchor_index: int = 0) -> ColumnReproduction:
    """Rebuild a probability column from its (rate, shape) and a single anchor entry."""
    level = LEVELS_M[anchor_index]
    target = column.probabilities_percent[anchor_index] / 100.0
    rec = reconstruct_threshold(column.rate, column.shape, level, target)
    fit = tail_fit(column.rate, column.shape, rec.solved_threshold)
    table = risk_table(fit, LEVELS_M, SAMPLING_INTERVAL_DAYS, column.stated_return_periods_days)
    return ColumnReproduction(column, rec, table)
