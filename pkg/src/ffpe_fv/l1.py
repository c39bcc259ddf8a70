"""L1 quadrature for the Caputo derivative on a uniform time grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np


@dataclass(frozen=True)
class L1Weights:
    """Weights ``a_k = (k+1)^(1-alpha) - k^(1-alpha)`` for ``k = 0..count-1``.

    ``scale`` optionally carries the prefactor ``h dt^-alpha / Gamma(2-alpha)``.
    """

    alpha: float
    a: np.ndarray
    scale: Optional[float] = None
    # diffs[j] = a[j-1] - a[j] for j >= 1; diffs[0] is unused and set to 0
    diffs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        d = np.zeros_like(self.a)
        d[1:] = self.a[:-1] - self.a[1:]
        d.flags.writeable = False
        object.__setattr__(self, "diffs", d)

    def __len__(self) -> int:
        return len(self.a)

    def coefficients(self, n: int) -> np.ndarray:
        """Coefficients multiplying ``W^0..W^{n-1}`` in the step-``n`` history sum."""
        if not 1 <= n <= len(self.a):
            raise ValueError(f"step index {n} outside 1..{len(self.a)}")
        c = np.empty(n)
        c[0] = self.a[n - 1]
        c[1:] = self.diffs[n - 1 : 0 : -1]
        return c


def l1_weights(alpha: float, count: int, scale: Optional[float] = None) -> L1Weights:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    beta = 1.0 - alpha
    k = np.arange(1, count, dtype=float)
    a = np.empty(count)
    a[0] = 1.0
    # k^beta * ((1 + 1/k)^beta - 1), free of the cancellation in the naive difference
    a[1:] = k**beta * np.expm1(beta * np.log1p(1.0 / k))
    a.flags.writeable = False
    return L1Weights(alpha=float(alpha), a=a, scale=scale)


def caputo_scale(h: float, dt: float, alpha: float) -> float:
    """``h dt^-alpha / Gamma(2 - alpha)``."""
    return h * dt ** (-alpha) / math.gamma(2.0 - alpha)


def history_combination(
    history: Union[np.ndarray, Sequence[np.ndarray]], weights: L1Weights, n: int
) -> np.ndarray:
    """Unscaled L1 history sum ``sum_{k=1}^{n-1} (a_{n-k-1} - a_{n-k}) W^k + a_{n-1} W^0``.

    ``history`` holds at least ``n`` rows; only rows ``0..n-1`` are read.
    """
    if isinstance(history, np.ndarray) and history.ndim == 2:
        rows = history
    else:
        lengths = {np.shape(v) for v in history}
        if len(lengths) > 1:
            raise ValueError(f"history vectors have mismatched shapes {sorted(lengths)}")
        rows = np.asarray(history, dtype=float)
    if rows.shape[0] < n:
        raise ValueError(f"need {n} history rows, got {rows.shape[0]}")
    return weights.coefficients(n) @ rows[:n]
