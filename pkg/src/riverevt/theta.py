"""
Extremal index estimation.

Two estimators are provided: the runs estimator, which counts exceedances
that close a cluster (followed by `r` non-exceedances), and the
interexceedance-times estimator built from the gaps between consecutive
exceedances. Both return the uncapped value alongside the estimate clipped
into [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

RUNS = "runs"
INTEREXCEEDANCE = "interexceedance"
METHODS = (RUNS, INTEREXCEEDANCE)


@dataclass(frozen=True)
class ExceedanceRecord:
    threshold: float
    times: np.ndarray  # 1-based positions of the exceedances
    n: int

    @property
    def interexceedance_times(self) -> np.ndarray:
        return np.diff(self.times)

    @property
    def count(self) -> int:
        return int(self.times.size)

    @property
    def empty(self) -> bool:
        return self.times.size == 0


@dataclass(frozen=True)
class ThetaEstimate:
    method: str
    threshold: float
    raw_theta: float
    exceedance_count: int
    run_length: Optional[int] = None
    reason: str = ""

    @property
    def defined(self) -> bool:
        return not math.isnan(self.raw_theta)

    @property
    def theta(self) -> float:
        if not self.defined:
            return math.nan
        return min(1.0, max(0.0, self.raw_theta))

    @property
    def mean_cluster_size(self) -> float:
        return 1.0 / self.theta if self.defined and self.theta > 0 else math.nan


@dataclass(frozen=True)
class ThetaCurve:
    thresholds: np.ndarray
    estimates: tuple[ThetaEstimate, ...]
    method: str

    @property
    def thetas(self) -> np.ndarray:
        return np.array([e.theta for e in self.estimates])

    @property
    def defined(self) -> np.ndarray:
        return np.array([e.defined for e in self.estimates], dtype=bool)


def exceedance_record(sample: Sequence[float], u: float) -> ExceedanceRecord:
    x = np.asarray(sample, dtype=float)
    if x.size == 0:
        raise ValueError("sample must be nonempty")
    return ExceedanceRecord(float(u), np.flatnonzero(x > u) + 1, int(x.size))


def runs_estimator(sample: Sequence[float], u: float, r: int = 1) -> ThetaEstimate:
    """
    Runs estimator of the extremal index.

    The numerator is the rate, over positions ``1..n-r``, of exceedances whose
    next `r` values are all at or below `u`; the denominator is the
    exceedance rate over the whole sample. Exceedances in the last `r`
    positions enter only the denominator.

    The denominator indicator is sometimes printed as ``1(H_i > n)``; the
    exceedance indicator ``1(H_i > u)`` is what is computed here.
    """
    x = np.asarray(sample, dtype=float)
    n = x.size
    if r < 1 or int(r) != r:
        raise ValueError("run length must be a positive integer")
    if r >= n:
        raise ValueError(f"run length {r} must be smaller than the sample size {n}")
    exc = x > u
    total = int(exc.sum())
    if total == 0:
        return ThetaEstimate(RUNS, float(u), math.nan, 0, r, "no exceedances")
    # any exceedance among the next r values
    padded = np.concatenate((exc, np.zeros(r, dtype=bool)))
    ahead = np.zeros(n, dtype=bool)
    for k in range(1, r + 1):
        ahead |= padded[k:k + n]
    closing = int(np.sum(exc[:n - r] & ~ahead[:n - r]))
    raw = Fraction(closing * n, (n - r) * total)
    return ThetaEstimate(RUNS, float(u), float(raw), total, r)


def interexceedance_theta(times: Sequence[int]) -> float:
    """
    Interexceedance estimate from the gaps ``T_i`` alone.

    Returns NaN when fewer than two gaps are given or every gap is at most 2
    (the denominator vanishes).
    """
    t = [int(v) for v in times]
    if len(t) < 2:
        return math.nan
    s1 = sum(v - 1 for v in t)
    s2 = sum((v - 1) * (v - 2) for v in t)
    if s2 == 0:
        return math.nan
    return float(Fraction(2 * s1 * s1, len(t) * s2))


def interexceedance_estimator(sample: Sequence[float], u: float) -> ThetaEstimate:
    rec = exceedance_record(sample, u)
    N = rec.count
    if N < 3:
        return ThetaEstimate(INTEREXCEEDANCE, float(u), math.nan, N,
                             reason=f"{N} exceedance(s); at least 3 needed")
    T = rec.interexceedance_times
    if T.max() <= 2:
        return ThetaEstimate(INTEREXCEEDANCE, float(u), math.nan, N,
                             reason="all interexceedance times <= 2")
    return ThetaEstimate(INTEREXCEEDANCE, float(u), interexceedance_theta(T), N)


def estimate(sample, u: float, method: str = RUNS, r: int = 1) -> ThetaEstimate:
    if method == RUNS:
        return runs_estimator(sample, u, r)
    if method == INTEREXCEEDANCE:
        return interexceedance_estimator(sample, u)
    raise ValueError(f"unknown theta method {method!r}; expected one of {METHODS}")


def default_grid(sample: Sequence[float], count: int = 50, lower_quantile: float = 0.80) -> np.ndarray:
    """`count` evenly spaced thresholds from the 80th percentile up to max minus one step."""
    x = np.asarray(sample, dtype=float)
    lo, hi = float(np.quantile(x, lower_quantile)), float(x.max())
    step = (hi - lo) / count
    return lo + step * np.arange(count)


def theta_sweep(sample: Sequence[float], thresholds: Optional[Sequence[float]] = None,
                method: str = RUNS, r: int = 1) -> ThetaCurve:
    """Estimate theta at every threshold; undefined points stay in the curve, flagged."""
    x = np.asarray(sample, dtype=float)
    grid = default_grid(x) if thresholds is None else np.asarray(thresholds, dtype=float)
    if grid.size == 0:
        raise ValueError("threshold grid must be nonempty")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("threshold grid must be strictly ascending")
    return ThetaCurve(grid, tuple(estimate(x, u, method, r) for u in grid), method)


def declustering_threshold(curve: ThetaCurve, tolerance: float = 1e-6) -> Optional[float]:
    """
    Smallest threshold from which theta stays at 1.

    Only defined estimates are considered. Returns None when the curve never
    settles at 1.
    """
    found = None
    for u, est in zip(reversed(curve.thresholds), reversed(curve.estimates)):
        if not est.defined:
            continue
        if est.theta < 1.0 - tolerance:
            break
        found = float(u)
    return found
