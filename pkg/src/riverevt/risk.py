"""
Exceedance probabilities and return periods from a fitted tail model.

Probabilities are per observation and stored as fractions; percent appears
only when rendering. The return period of a level is the sampling interval
divided by its exceedance probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import dist
from .fitgof import TailFit


def exceedance_probability(fit: TailFit, level: float) -> float:
    """Probability that a crest exceeds `level`, for levels above the fit threshold."""
    if not level > fit.threshold:
        raise ValueError(f"level {level} m is not above the fit threshold {fit.threshold} m")
    return dist.survival(fit.model, level - fit.threshold)


def return_period_days(probability: float, sampling_interval_days: float) -> float:
    """``interval / probability``; ``inf`` when the probability is 0."""
    if not 0 <= probability <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {probability}")
    if not sampling_interval_days > 0:
        raise ValueError("sampling interval must be positive")
    if probability == 0:
        return math.inf
    return sampling_interval_days / probability


@dataclass(frozen=True)
class RiskTable:
    levels: np.ndarray
    probabilities: np.ndarray
    return_periods_days: np.ndarray
    fit: Optional[TailFit]
    sampling_interval_days: float
    footnotes: tuple[str, ...] = ()

    @property
    def percent(self) -> np.ndarray:
        return self.probabilities * 100.0

    def rows(self, digits: int = 4) -> list[dict]:
        return [{"level_m": float(lv), "probability_percent": float(f"{p * 100:.{digits}g}"),
                 "return_period_days": float(f"{t:.{digits}g}") if math.isfinite(t) else None}
                for lv, p, t in zip(self.levels, self.probabilities, self.return_periods_days)]

    def render(self, digits: int = 4) -> str:
        lines = [f"{'level (m)':>10}  {'P (%)':>12}  {'return (days)':>14}"]
        for lv, p, t in zip(self.levels, self.probabilities, self.return_periods_days):
            lines.append(f"{lv:>10.2f}  {p * 100:>12.{digits - 1}e}  {t:>14.{digits}g}")
        lines += [f"* {note}" for note in self.footnotes]
        return "\n".join(lines)


def risk_table(fit: TailFit, levels: Sequence[float], sampling_interval_days: float = 10.0,
               stated_return_periods: Optional[Mapping[float, float]] = None,
               rel_tol: float = 0.01) -> RiskTable:
    """
    Exceedance probability and return period for every level.

    `stated_return_periods` maps levels to externally reported return periods
    in days; each one that disagrees with the computed value by more than
    `rel_tol` gets a footnote. The computed value is what the table holds.
    """
    if not sampling_interval_days > 0:
        raise ValueError("sampling interval must be positive")
    lv = np.asarray(levels, dtype=float)
    probs = np.array([exceedance_probability(fit, float(v)) for v in lv], dtype=float)
    periods = np.array([return_period_days(float(p), sampling_interval_days) for p in probs])
    notes = []
    for level, stated in (stated_return_periods or {}).items():
        hit = np.flatnonzero(np.isclose(lv, level))
        if hit.size == 0:
            continue
        computed = float(periods[hit[0]])
        if abs(computed - stated) > rel_tol * stated:
            notes.append(
                f"level {level:g} m: computed return period {computed:,.0f} days "
                f"(= {sampling_interval_days:g} days / {probs[hit[0]] * 100:.3g} %) "
                f"differs from the stated {stated:,.0f} days by a factor of {computed / stated:.3g}; "
                "the computed value is reported")
    return RiskTable(lv, probs, periods, fit, float(sampling_interval_days), tuple(notes))


@dataclass(frozen=True)
class ThresholdReconstruction:
    level: float
    target_probability: float
    solved_threshold: float
    residual: float


def reconstruct_threshold(rate: float, shape: float, level: float, target_probability: float,
                          span: float = 50.0) -> ThresholdReconstruction:
    """
    Threshold `u` for which a Weibull tail gives ``exp(-rate*(level-u)**shape) == target``.

    Solved by a bracketed root search on ``u`` in ``(level - span, level)``;
    `residual` is the relative mismatch of the survival probability.
    """
    if not 0 < target_probability < 1:
        raise ValueError("target probability must lie in (0, 1)")
    model = dist.weibull(rate, shape)
    log_target = math.log(target_probability)

    def g(u):
        return -rate * (level - u) ** shape - log_target

    lo, hi = level - span, level
    if not g(lo) < 0 < g(hi):
        raise ValueError(f"no threshold in ({lo}, {hi}) gives probability {target_probability}")
    u = brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    s = dist.survival(model, level - u)
    return ThresholdReconstruction(float(level), float(target_probability), float(u),
                                   abs(s - target_probability) / target_probability)


def tail_fit(rate: float, shape: float, threshold: float) -> TailFit:
    """A Weibull :class:`TailFit` from published or assumed parameters."""
    return TailFit(dist.weibull(rate, shape), float(threshold), "given", math.nan, 0)
