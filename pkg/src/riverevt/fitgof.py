"""
Quantile-quantile diagnostics and tail fitting.

Each family has Q-Q coordinates in which its quantile function is a straight
line:

==============  ==========================  ==================
family          theoretical coordinate      sample coordinate
==============  ==========================  ==================
exponential     ``-ln(1 - p)``              ``x``
weibull         ``ln(-ln(1 - p))``          ``ln x``
gumbel          ``-ln(-ln p)``              ``x``
frechet         ``-ln(-ln p)``              ``ln x``
==============  ==========================  ==================

Fits by Q-Q regression invert the fitted line; the Weibull maximum
likelihood fit solves the profile equation for the shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from . import dist
from .dist import EXPONENTIAL, FRECHET, GUMBEL, WEIBULL, DistributionModel

PLOTTING_RULES = ("weibull", "hazen")
QQ = "qq-regression"
MLE = "mle"

_LOG_SAMPLE = {EXPONENTIAL: False, WEIBULL: True, GUMBEL: False, FRECHET: True}


class FitError(ValueError):
    """The sample is inconsistent with the requested family or method."""


def plotting_positions(n: int, rule: str = "weibull") -> np.ndarray:
    """
    Probabilities for the order statistics of a sample of size `n`.

    ``"weibull"`` gives ``i/(n+1)`` and ``"hazen"`` gives ``(i-0.5)/n``;
    both stay strictly inside (0, 1).
    """
    i = np.arange(1, n + 1, dtype=float)
    if rule == "weibull":
        return i / (n + 1.0)
    if rule == "hazen":
        return (i - 0.5) / n
    raise ValueError(f"unknown plotting-position rule {rule!r}; expected one of {PLOTTING_RULES}")


def theoretical_coordinate(family: str, p: np.ndarray) -> np.ndarray:
    family = dist.canonical_family(family)
    if family == EXPONENTIAL:
        return -np.log1p(-p)
    if family == WEIBULL:
        return np.log(-np.log1p(-p))
    return -np.log(-np.log(p))


@dataclass(frozen=True)
class QQPlot:
    family: str
    theoretical: np.ndarray
    sample: np.ndarray
    plotting_position_rule: str
    probabilities: np.ndarray = field(repr=False)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.theoretical.tolist(), self.sample.tolist()))

    def __len__(self) -> int:
        return int(self.theoretical.size)


def qq_points(sample: Sequence[float], family: str, rule: str = "weibull") -> QQPlot:
    """Q-Q coordinates of the order statistics of `sample` for `family`."""
    family = dist.canonical_family(family)
    x = np.sort(np.asarray(getattr(sample, "excesses", sample), dtype=float))
    if x.size < 3:
        raise FitError(f"Q-Q plot needs at least 3 values, got {x.size}")
    if _LOG_SAMPLE[family] and x[0] <= 0:
        k = int(np.flatnonzero(x <= 0)[0]) + 1
        raise FitError(f"{family} Q-Q plot takes ln x but order statistic {k} is {x[k - 1]!r}")
    p = plotting_positions(x.size, rule)
    y = np.log(x) if _LOG_SAMPLE[family] else x
    return QQPlot(family, theoretical_coordinate(family, p), y, rule, p)


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float


def linearity(plot: QQPlot) -> LineFit:
    """Ordinary least squares of sample coordinate on theoretical coordinate."""
    t, y = plot.theoretical, plot.sample
    if t.size < 3:
        raise FitError("linearity needs at least 3 points")
    tc = t - t.mean()
    stt = float(tc @ tc)
    if stt == 0:
        raise FitError("theoretical coordinate has zero variance")
    yc = y - y.mean()
    syy = float(yc @ yc)
    if syy == 0:
        raise FitError("sample coordinate has zero variance")
    slope = float(tc @ yc) / stt
    intercept = float(y.mean() - slope * t.mean())
    resid = y - (intercept + slope * t)
    r2 = 1.0 - float(resid @ resid) / syy
    return LineFit(slope, intercept, min(1.0, max(0.0, r2)))


def model_coordinate(model: DistributionModel, p: np.ndarray) -> np.ndarray:
    """Model quantiles at `p`, in the family's sample coordinate."""
    q = dist.quantile(model, p)
    return np.log(q) if _LOG_SAMPLE[model.family] else q


def model_r_squared(sample: Sequence[float], model: DistributionModel, rule: str = "weibull") -> float:
    """
    Agreement between the sample and a specific model on its Q-Q plot.

    ``1 - SS(sample - model quantile) / SS(sample - mean)`` in the family's
    sample coordinate; unlike :func:`linearity` this depends on the
    parameters, and may be negative for a poor model.
    """
    plot = qq_points(sample, model.family, rule)
    resid = plot.sample - model_coordinate(model, plot.probabilities)
    yc = plot.sample - plot.sample.mean()
    return 1.0 - float(resid @ resid) / float(yc @ yc)


@dataclass(frozen=True)
class TailFit:
    model: DistributionModel
    threshold: float
    method: str
    goodness: float
    sample_size: int

    @property
    def family(self) -> str:
        return self.model.family

    @property
    def rate(self) -> float:
        return self.model.rate

    @property
    def shape(self) -> float:
        return self.model.shape


def _threshold_of(sample, threshold):
    if threshold is not None:
        return float(threshold)
    return float(getattr(sample, "threshold", 0.0))


def fit_qq_regression(sample, family: str = WEIBULL, rule: str = "weibull",
                      threshold: Optional[float] = None) -> TailFit:
    """
    Fit `family` by a straight line through its Q-Q plot.

    Weibull: ``ln x = -(ln rate)/shape + t/shape``, so ``shape = 1/slope`` and
    ``rate = exp(-intercept * shape)``. Exponential: line through the origin
    with slope ``1/rate``. Gumbel: ``loc = intercept``, ``scale = slope``.
    Frechet (loc 0): ``shape = 1/slope``, ``scale = exp(intercept)``.
    """
    plot = qq_points(sample, family, rule)
    line = linearity(plot)
    family = plot.family
    if family == EXPONENTIAL:
        t, y = plot.theoretical, plot.sample
        slope = float(t @ y) / float(t @ t)
        if slope <= 0:
            raise FitError("non-positive Q-Q slope; exponential fit failed")
        model = dist.exponential(1.0 / slope)
    else:
        if line.slope <= 0:
            raise FitError(f"non-positive Q-Q slope; {family} fit failed")
        if family == WEIBULL:
            shape = 1.0 / line.slope
            model = dist.weibull(math.exp(-line.intercept * shape), shape)
        elif family == GUMBEL:
            model = dist.gumbel(line.intercept, line.slope)
        else:
            model = dist.frechet(1.0 / line.slope, 0.0, math.exp(line.intercept))
    return TailFit(model, _threshold_of(sample, threshold), QQ, line.r_squared, len(plot))


def weibull_profile(shape: float, logx: np.ndarray) -> float:
    """``sum x^r ln x / sum x^r - 1/r - mean(ln x)``, computed with scaled weights."""
    w = np.exp(shape * (logx - logx.max()))
    return float(w @ logx / w.sum()) - 1.0 / shape - float(logx.mean())


def fit_mle_weibull(sample, threshold: Optional[float] = None, rule: str = "weibull",
                    bracket: tuple[float, float] = (1e-3, 1e3), tol: float = 1e-10) -> TailFit:
    """
    Maximum likelihood Weibull fit in the rate/shape form.

    The shape solves the profile equation by a bracketed root search; the rate
    follows as ``n / sum(x**shape)``. `goodness` is the Weibull Q-Q R².
    """
    x = np.asarray(getattr(sample, "excesses", sample), dtype=float)
    if x.size < 3:
        raise FitError(f"MLE needs at least 3 values, got {x.size}")
    if np.any(x <= 0):
        raise FitError("Weibull MLE needs strictly positive values")
    logx = np.log(x)
    lo, hi = bracket
    g_lo, g_hi = weibull_profile(lo, logx), weibull_profile(hi, logx)
    if not (g_lo < 0 < g_hi):
        raise FitError("profile equation has no sign change in the shape bracket "
                       "(degenerate sample, e.g. all values equal)")
    shape = brentq(weibull_profile, lo, hi, args=(logx,), xtol=1e-15, rtol=4 * np.finfo(float).eps,
                   maxiter=500)
    resid = weibull_profile(shape, logx)
    if abs(resid) >= tol:
        raise FitError(f"profile equation residual {resid:.3g} did not reach {tol:g}")
    rate = math.exp(math.log(x.size) - float(logsumexp(shape * logx)))
    line = linearity(qq_points(x, WEIBULL, rule))
    return TailFit(dist.weibull(rate, shape), _threshold_of(sample, threshold), MLE,
                   line.r_squared, int(x.size))


def fit(sample, family: str = WEIBULL, method: str = QQ, rule: str = "weibull",
        threshold: Optional[float] = None) -> TailFit:
    family = dist.canonical_family(family)
    if method in (QQ, "qq"):
        return fit_qq_regression(sample, family, rule, threshold)
    if method == MLE:
        if family != WEIBULL:
            raise ValueError("maximum likelihood is implemented for the weibull family only")
        return fit_mle_weibull(sample, threshold, rule)
    raise ValueError(f"unknown fit method {method!r}")


@dataclass(frozen=True)
class FamilySelection:
    ranking: tuple[tuple[str, float], ...]
    skipped: dict = field(default_factory=dict)

    @property
    def best(self) -> Optional[str]:
        return self.ranking[0][0] if self.ranking else None


def select_family(sample, families: Sequence[str] = (WEIBULL, EXPONENTIAL, GUMBEL, FRECHET),
                  rule: str = "weibull") -> FamilySelection:
    """Rank families by Q-Q R², best first; inadmissible families are skipped with a reason."""
    scores, skipped = [], {}
    for fam in families:
        fam = dist.canonical_family(fam)
        try:
            scores.append((fam, linearity(qq_points(sample, fam, rule)).r_squared))
        except FitError as exc:
            skipped[fam] = str(exc)
    scores.sort(key=lambda item: -item[1])
    return FamilySelection(tuple(scores), skipped)
