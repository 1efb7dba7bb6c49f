"""
Parametric tail families and the empirical distribution.

Parameterizations::

    exponential  F(x) = 1 - exp(-rate * x)                       x > 0
    weibull      F(x) = 1 - exp(-rate * x**shape)                 x > 0
    gumbel       F(x) = exp(-exp(-(x - loc) / scale))
    frechet      F(x) = exp(-((x - loc) / scale)**(-shape))       x > loc

The Weibull form is the rate/shape one used for threshold excesses, not the
scale/shape form of :mod:`scipy.stats`. The Frechet family is sometimes
called Frechet-Pareto; ``"frechet-pareto"`` is accepted as an alias.

All functions accept scalars or arrays and return the same kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EXPONENTIAL = "exponential"
WEIBULL = "weibull"
GUMBEL = "gumbel"
FRECHET = "frechet"
FAMILIES = (EXPONENTIAL, WEIBULL, GUMBEL, FRECHET)
ALIASES = {"e": EXPONENTIAL, "w": WEIBULL, "g": GUMBEL, "f": FRECHET, "frechet-pareto": FRECHET}


def canonical_family(name: str) -> str:
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}")
    return key


@dataclass(frozen=True)
class DistributionModel:
    family: str
    rate: float = 1.0
    shape: float = 1.0
    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", canonical_family(self.family))
        for name in ("rate", "shape", "scale"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{self.family}: {name} must be positive and finite, got {v!r}")
        if not np.isfinite(self.loc):
            raise ValueError("loc must be finite")

    def params(self) -> dict:
        if self.family == EXPONENTIAL:
            return {"rate": self.rate}
        if self.family == WEIBULL:
            return {"rate": self.rate, "shape": self.shape}
        if self.family == GUMBEL:
            return {"loc": self.loc, "scale": self.scale}
        return {"shape": self.shape, "loc": self.loc, "scale": self.scale}


def exponential(rate: float) -> DistributionModel:
    return DistributionModel(EXPONENTIAL, rate=rate)


def weibull(rate: float, shape: float) -> DistributionModel:
    return DistributionModel(WEIBULL, rate=rate, shape=shape)


def gumbel(loc: float, scale: float) -> DistributionModel:
    return DistributionModel(GUMBEL, loc=loc, scale=scale)


def frechet(shape: float, loc: float = 0.0, scale: float = 1.0) -> DistributionModel:
    return DistributionModel(FRECHET, shape=shape, loc=loc, scale=scale)


def _out(x, scalar):
    return float(x) if scalar else x


def _hazard(model: DistributionModel, x: np.ndarray) -> np.ndarray:
    """Cumulative hazard -log S(x) on the positive half line, 0 elsewhere."""
    xp = np.where(x > 0, x, 0.0)
    if model.family == EXPONENTIAL:
        return model.rate * xp
    return model.rate * xp ** model.shape


def survival(model: DistributionModel, x):
    """
    ``1 - cdf(x)``, evaluated without cancellation.

    The exponential and Weibull tails are ``exp(-hazard)``; the Gumbel and
    Frechet tails use ``-expm1(log F)``, so tiny tail probabilities keep full
    relative precision.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if model.family in (EXPONENTIAL, WEIBULL):
            s = np.exp(-_hazard(model, x))
        elif model.family == GUMBEL:
            s = -np.expm1(-np.exp(-(x - model.loc) / model.scale))
        else:
            z = (x - model.loc) / model.scale
            s = np.where(z > 0, -np.expm1(-np.where(z > 0, z, 1.0) ** -model.shape), 1.0)
    return _out(s, scalar)


def cdf(model: DistributionModel, x):
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if model.family in (EXPONENTIAL, WEIBULL):
            f = -np.expm1(-_hazard(model, x))
        elif model.family == GUMBEL:
            f = np.exp(-np.exp(-(x - model.loc) / model.scale))
        else:
            z = (x - model.loc) / model.scale
            f = np.where(z > 0, np.exp(-np.where(z > 0, z, 1.0) ** -model.shape), 0.0)
    return _out(f, scalar)


def pdf(model: DistributionModel, x):
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    lam, r = model.rate, model.shape
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if model.family == EXPONENTIAL:
            d = np.where(x >= 0, lam * np.exp(-lam * np.where(x >= 0, x, 0.0)), 0.0)
        elif model.family == WEIBULL:
            xp = np.where(x > 0, x, 1.0)
            d = np.where(x > 0, lam * r * xp ** (r - 1) * np.exp(-lam * xp ** r), 0.0)
            if r == 1:
                d = np.where(x == 0, lam, d)
            elif r < 1:
                d = np.where(x == 0, np.inf, d)
        elif model.family == GUMBEL:
            z = (x - model.loc) / model.scale
            d = np.exp(-z - np.exp(-z)) / model.scale
        else:
            z = (x - model.loc) / model.scale
            zp = np.where(z > 0, z, 1.0)
            d = np.where(z > 0, r / model.scale * zp ** (-1 - r) * np.exp(-zp ** -r), 0.0)
    return _out(d, scalar)


def quantile(model: DistributionModel, p):
    """Inverse of :func:`cdf` for ``0 < p < 1``."""
    scalar = np.ndim(p) == 0
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
        raise ValueError("quantile probabilities must lie in the open interval (0, 1)")
    if model.family == EXPONENTIAL:
        q = -np.log1p(-p) / model.rate
    elif model.family == WEIBULL:
        q = (-np.log1p(-p) / model.rate) ** (1.0 / model.shape)
    elif model.family == GUMBEL:
        q = model.loc - model.scale * np.log(-np.log(p))
    else:
        q = model.loc + model.scale * (-np.log(p)) ** (-1.0 / model.shape)
    return _out(q, scalar)


def sample(model: DistributionModel, size, rng: np.random.Generator) -> np.ndarray:
    """Draws by inversion of uniform variates."""
    u = rng.random(size)
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    return quantile(model, u)


@dataclass(frozen=True)
class EmpiricalDistribution:
    sorted_values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.sorted_values, dtype=float))
        if v.size == 0:
            raise ValueError("empirical distribution needs at least one value")
        object.__setattr__(self, "sorted_values", v)

    @property
    def n(self) -> int:
        return int(self.sorted_values.size)


def empirical(values) -> EmpiricalDistribution:
    return EmpiricalDistribution(np.asarray(values, dtype=float))


def empirical_cdf(e: EmpiricalDistribution, x):
    """Fraction of the sample at or below `x`."""
    scalar = np.ndim(x) == 0
    f = np.searchsorted(e.sorted_values, np.asarray(x, dtype=float), side="right") / e.n
    return _out(f, scalar)


def empirical_quantile(e: EmpiricalDistribution, p):
    """Smallest sample value whose empirical cdf strictly exceeds `p`, for ``0 <= p < 1``."""
    scalar = np.ndim(p) == 0
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p >= 1)):
        raise ValueError("empirical quantile needs 0 <= p < 1")
    levels = np.arange(1, e.n + 1) / e.n
    # number of attainable cdf levels i/n that are still <= p
    idx = np.searchsorted(levels, p, side="right")
    return _out(e.sorted_values[idx], scalar)
