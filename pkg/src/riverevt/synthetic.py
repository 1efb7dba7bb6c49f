"""
Seeded generators with known extremal behaviour.

``EVT_SEED`` in the environment overrides the default seed of every
generator that is called without an explicit one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Optional

import numpy as np

from . import dist

DEFAULT_SEED = 20080721


def resolve_seed(seed: Optional[int] = None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get("EVT_SEED")
    return int(env) if env else DEFAULT_SEED


def iid_uniform(n: int, seed: Optional[int] = None) -> np.ndarray:
    """i.i.d. standard uniform values (extremal index 1)."""
    return np.random.default_rng(resolve_seed(seed)).random(n)


def moving_maximum(n: int, window: int = 2, seed: Optional[int] = None) -> np.ndarray:
    """
    ``X_i = max(Z_i, ..., Z_{i-window+1})`` over i.i.d. unit Frechet ``Z``.

    The extremal index of this process is ``1/window``.
    """
    rng = np.random.default_rng(resolve_seed(seed))
    z = dist.sample(dist.frechet(1.0), n + window - 1, rng)
    return np.lib.stride_tricks.sliding_window_view(z, window).max(axis=1)


@dataclass(frozen=True)
class Regime:
    base_m: float
    rate: float
    shape: float
    waves: int

    @property
    def crest_threshold_m(self) -> float:
        return self.base_m + CREST_OFFSET_M


# wave template relative to the regime base: two troughs, rise, crest, fall
TROUGH_M, RISE_M, CREST_OFFSET_M, FALL_M = -1.0, 0.3, 0.5, 0.2
WAVE_LENGTH = 5

DEFAULT_REGIMES = (
    Regime(58.0, 1.135, 1.410, 2000),
    Regime(57.0, 1.280, 1.494, 2000),
)


@dataclass(frozen=True)
class SyntheticSeries:
    dates: list
    levels: np.ndarray
    regimes: tuple[Regime, ...]
    seed: int
    change_index: list = field(default_factory=list)

    def to_csv(self) -> str:
        rows = ["date,level_m"] + [f"{d.isoformat()},{float(v)!r}" for d, v in zip(self.dates, self.levels)]
        return "\n".join(rows) + "\n"


def two_regime_series(regimes=DEFAULT_REGIMES, seed: Optional[int] = None,
                      start: date = date(2008, 7, 21), interval_days: int = 10,
                      jitter_m: float = 0.05) -> SyntheticSeries:
    """
    Level series made of wave structures with Weibull crest excesses.

    Every wave has two troughs below the regime base, a rise, a crest and a
    fall, so it contains exactly one up-crossing of the regime mean. Crest
    heights are ``base + 0.5 m + W`` with ``W`` drawn from the regime's Weibull
    (rate, shape). Troughs and shoulders carry uniform jitter of ``jitter_m``.
    """
    seed = resolve_seed(seed)
    rng = np.random.default_rng(seed)
    chunks, changes, pos = [], [], 0
    for reg in regimes:
        w = dist.sample(dist.weibull(reg.rate, reg.shape), reg.waves, rng)
        jit = rng.uniform(-jitter_m, jitter_m, size=(reg.waves, WAVE_LENGTH))
        wave = np.empty((reg.waves, WAVE_LENGTH))
        wave[:, 0] = reg.base_m + TROUGH_M + jit[:, 0]
        wave[:, 1] = reg.base_m + TROUGH_M + jit[:, 1]
        wave[:, 2] = reg.base_m + RISE_M + jit[:, 2]
        wave[:, 3] = reg.crest_threshold_m + w
        wave[:, 4] = reg.base_m + FALL_M + jit[:, 4]
        chunks.append(wave.ravel())
        if pos:
            changes.append(pos)
        pos += wave.size
    levels = np.round(np.concatenate(chunks), 6)
    dates = [start + timedelta(days=interval_days * k) for k in range(levels.size)]
    return SyntheticSeries(dates, levels, tuple(regimes), seed, changes)
