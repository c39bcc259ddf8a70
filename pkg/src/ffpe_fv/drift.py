"""Splitting of the drift into a bounded central part and two one-sided upwind parts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import Grid, ScalarMap


@dataclass(frozen=True)
class SplitDrift:
    """Drift parts at the half-points ``x_{i+1/2}``, ``i = 0..N``.

    ``fm`` is bounded by ``threshold = 2 k_alpha / h``, ``fu >= 0`` is treated
    upwind from the left, ``fl <= 0`` upwind from the right.
    """

    fm: np.ndarray
    fu: np.ndarray
    fl: np.ndarray
    threshold: float


def split_values(values: np.ndarray, threshold: float) -> SplitDrift:
    values = np.asarray(values, dtype=float)
    fu = np.maximum(values - threshold, 0.0)
    fl = np.minimum(values + threshold, 0.0)
    # clipping (not f - fu - fl) keeps |fm| <= threshold exact, so the
    # off-diagonals -k/h + fm/2 never round to a positive value
    fm = np.clip(values, -threshold, threshold)
    for v in (fm, fu, fl):
        v.flags.writeable = False
    return SplitDrift(fm=fm, fu=fu, fl=fl, threshold=threshold)


def split_drift(f: ScalarMap, k_alpha: float, grid: Grid) -> SplitDrift:
    x = grid.half_points
    values = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    return split_values(values, 2.0 * k_alpha / grid.h)
