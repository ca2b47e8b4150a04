"""Power transform of interval regressands.

Each bound is mapped by the classical Box-Cox power transform after a
shift that makes every datum strictly positive. The transform is strictly
increasing, so ``lo <= hi`` is preserved in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BoxCoxInfeasible, NonPositiveDomain, OutOfImage
from .interval import Interval
from .linalg import solve_ls
from .validation import bound_design

LAMBDA_GRID = tuple(round(1.0 - 0.1 * i, 1) for i in range(21))
MIN_SHIFTED = 1e-6
RANGE_ATOL = 1e-10


@dataclass(frozen=True)
class BoxCoxTransform:
    lmbda: float
    shift: float = 0.0

    def forward(self, b):
        b = np.asarray(b, dtype=float) + self.shift
        if np.any(b <= 0):
            raise NonPositiveDomain("Box-Cox input must be positive after shifting")
        if self.lmbda == 0:
            return np.log(b)
        return (b ** self.lmbda - 1.0) / self.lmbda

    def inverse(self, t):
        t = np.asarray(t, dtype=float)
        if self.lmbda == 0:
            return np.exp(t) - self.shift
        base = self.lmbda * t + 1.0
        if np.any(base <= 0):
            raise OutOfImage(f"value outside the image of the transform with lambda={self.lmbda}")
        return base ** (1.0 / self.lmbda) - self.shift

    def in_image(self, t):
        if self.lmbda == 0:
            return np.ones(np.shape(t), dtype=bool)
        return self.lmbda * np.asarray(t, dtype=float) + 1.0 > 0


def apply(t: BoxCoxTransform, v: Interval) -> Interval:
    lo, hi = t.forward([v.lo, v.hi])
    return Interval(lo, hi)


def invert(t: BoxCoxTransform, v: Interval) -> Interval:
    lo, hi = t.inverse([v.lo, v.hi])
    return Interval(lo, hi)


def fitted_ranges(design, widths):
    """Project regressand ranges onto the column space of ``design`` (the hat matrix)."""
    return design @ solve_ls(design, widths).coefficients


def ranges_nonnegative(design, widths, atol=RANGE_ATOL):
    """Range pre-check: every hat-matrix fitted range is nonnegative.

    ``atol`` absorbs rounding on exactly-zero fits and is relative to the
    largest observed range.
    """
    fitted = fitted_ranges(design, widths)
    scale = max(1.0, float(np.max(np.abs(widths), initial=0.0)))
    return bool(np.all(fitted >= -atol * scale)), fitted


def select_lambda(ds, grid=LAMBDA_GRID):
    """First power on ``grid`` whose transformed regressand passes the range pre-check.

    The pre-check uses the bound design ``[1, x_1^-, x_1^+, ...]``. A power
    is also rejected when the fitted transformed bounds leave the image of
    the transform, since those in-sample predictions could not be mapped
    back.

    Raises
    ------
    BoxCoxInfeasible
        If no grid point succeeds.
    """
    design = bound_design(np.asarray(ds.x_lo), np.asarray(ds.x_hi))
    y_lo = np.asarray(ds.y_lo, dtype=float)
    y_hi = np.asarray(ds.y_hi, dtype=float)
    shift = max(0.0, MIN_SHIFTED - float(np.min(y_lo)))
    for lmbda in grid:
        t = BoxCoxTransform(float(lmbda), shift)
        t_lo, t_hi = t.forward(y_lo), t.forward(y_hi)
        ok, _ = ranges_nonnegative(design, t_hi - t_lo)
        if not ok:
            continue
        fit_lo = design @ solve_ls(design, t_lo).coefficients
        fit_hi = design @ solve_ls(design, t_hi).coefficients
        if np.all(t.in_image(fit_lo)) and np.all(t.in_image(fit_hi)):
            return t
    raise BoxCoxInfeasible("no Box-Cox power on the grid yields nonnegative fitted ranges")
