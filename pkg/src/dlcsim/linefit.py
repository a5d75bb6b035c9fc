"""Ordinary least-squares line fits."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFitError

__all__ = ["SamplePair", "FitResult", "fit_line", "fit_arrays"]


@dataclass(frozen=True)
class SamplePair:
    x: float
    y: float


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    n_samples: int

    def predict(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def fit_arrays(x, y) -> FitResult:
    """Fit ``y ~ slope * x + intercept`` with the mean-centered normal equations.

    R^2 is ``1 - SS_res/SS_tot``. When the residuals are at rounding level
    (including every ``y`` equal) the fit is exact and R^2 is reported as 1.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateFitError("x and y must be 1-D arrays of equal length")
    n = x.size
    if n < 2:
        raise DegenerateFitError(f"need at least 2 samples, got {n}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DegenerateFitError("samples must be finite")
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise DegenerateFitError("all x values are identical")
    dy = y - y.mean()
    slope = float(np.dot(dx, dy)) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(dy, dy))
    # residuals at rounding level mean an exact fit, even for constant y
    exact = ss_res <= (16 * np.finfo(float).eps) ** 2 * float(np.dot(y, y))
    r2 = 1.0 if exact or ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, min(1.0, max(0.0, r2)), n)


def fit_line(samples: Iterable[SamplePair | tuple[float, float]]) -> FitResult:
    pairs = [(s.x, s.y) if isinstance(s, SamplePair) else tuple(s) for s in samples]
    if len(pairs) < 2:
        raise DegenerateFitError(f"need at least 2 samples, got {len(pairs)}")
    x, y = zip(*pairs)
    return fit_arrays(x, y)
