"""
Wave-crest maxima and threshold excesses.

A wave structure is the stretch of a segment between two successive
up-crossings of a reference level. The maximum of each structure is one
realization of the crest-height variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


@dataclass(frozen=True)
class CrestSeries:
    crest_indices: np.ndarray
    crest_levels: np.ndarray
    reference_level: float

    def __len__(self) -> int:
        return int(self.crest_levels.size)

    @property
    def empty(self) -> bool:
        return self.crest_levels.size == 0


@dataclass(frozen=True)
class ExcessSample:
    threshold: float
    excesses: np.ndarray

    def __len__(self) -> int:
        return int(self.excesses.size)


def upcrossings(levels: np.ndarray, reference: float) -> np.ndarray:
    """
    Indices where the series passes from ``<= reference`` to ``> reference``.

    The position before the first sample counts as at-or-below the reference,
    so a segment that opens above it starts with an up-crossing at index 0.
    """
    above = levels > reference
    prev = np.concatenate(([False], above[:-1]))
    return np.flatnonzero(above & ~prev)


def extract_crests(levels: Sequence[float], reference: Union[float, str] = "mean") -> CrestSeries:
    """
    Maximum of every wave structure of a segment.

    Parameters
    ----------
    levels : sequence of float
        Segment values in meters, at least 3.
    reference : float or "mean"
        Level whose up-crossings delimit the structures. Values equal to the
        reference count as below it.

    Returns
    -------
    CrestSeries
        One crest per structure, at the first index of its maximum. Empty when
        the segment never exceeds the reference.
    """
    x = np.asarray(levels, dtype=float)
    if x.size < 3:
        raise ValueError("crest extraction needs a segment of length >= 3")
    if isinstance(reference, str):
        if reference != "mean":
            raise ValueError(f"unknown reference {reference!r}")
        ref = float(x.mean())
    else:
        ref = float(reference)

    starts = upcrossings(x, ref)
    if starts.size == 0:
        return CrestSeries(np.array([], dtype=int), np.array([], dtype=float), ref)
    stops = np.append(starts[1:], x.size)
    idx = np.array([a + int(np.argmax(x[a:b])) for a, b in zip(starts, stops)], dtype=int)
    return CrestSeries(idx, x[idx], ref)


def excesses(crests: Union[CrestSeries, Sequence[float]], u: float) -> ExcessSample:
    """Crest heights strictly above `u`, minus `u`, in their original order."""
    if not np.isfinite(u):
        raise ValueError("threshold must be finite")
    h = crests.crest_levels if isinstance(crests, CrestSeries) else np.asarray(crests, float)
    return ExcessSample(float(u), h[h > u] - u)
