"""Input validation for interval arrays in estimator form.

Regressors arrive as ``(n, 2p)`` arrays with interleaved ``lo, hi`` columns
(or ``(n, p, 2)``); the regressand as ``(n, 2)``. An :class:`IntervalDataset`
is accepted wherever ``X`` is, in which case ``y`` defaults to its regressand.
"""

import numpy as np

from .exceptions import DataError, DimensionMismatch, EmptyInput
from .interval import IntervalDataset, check_bounds


def split_bounds(X):
    """Return ``(lo, hi)`` arrays of shape ``(n, p)`` from an interval design."""
    if isinstance(X, IntervalDataset):
        return np.array(X.x_lo), np.array(X.x_hi)
    X = np.asarray(X, dtype=float)
    if X.ndim == 3:
        if X.shape[2] != 2:
            raise DimensionMismatch(f"3-D interval input must end in an axis of size 2, got {X.shape}")
        lo, hi = X[..., 0], X[..., 1]
    elif X.ndim == 2:
        if X.shape[1] % 2:
            raise DimensionMismatch(f"expected an even number of bound columns, got {X.shape[1]}")
        lo, hi = X[:, 0::2], X[:, 1::2]
    else:
        raise DimensionMismatch(f"interval input must be 2-D or 3-D, got {X.ndim}-D")
    if lo.shape[0] == 0:
        raise EmptyInput("no observations")
    if lo.shape[1] == 0:
        raise DataError("at least one regressor is required")
    return check_bounds(lo, hi, "regressors")


def split_target(y, n=None):
    y = np.asarray(y, dtype=float)
    if y.ndim != 2 or y.shape[1] != 2:
        raise DimensionMismatch(f"regressand must have shape (n, 2), got {y.shape}")
    if n is not None and y.shape[0] != n:
        raise DimensionMismatch(f"regressand has {y.shape[0]} rows, regressors have {n}")
    return check_bounds(y[:, 0], y[:, 1], "regressand")


def check_Xy(X, y=None):
    if isinstance(X, IntervalDataset) and y is None:
        return np.array(X.x_lo), np.array(X.x_hi), np.array(X.y_lo), np.array(X.y_hi)
    if y is None:
        raise DataError("a regressand is required")
    lo, hi = split_bounds(X)
    y_lo, y_hi = split_target(y, lo.shape[0])
    return lo, hi, y_lo, y_hi


def center_design(lo, hi):
    """``[1, x_1^c, ..., x_p^c]``."""
    return np.column_stack([np.ones(lo.shape[0]), (lo + hi) / 2])


def bound_design(lo, hi):
    """``[1, x_1^-, x_1^+, ..., x_p^-, x_p^+]``."""
    cols = np.empty((lo.shape[0], 2 * lo.shape[1]))
    cols[:, 0::2] = lo
    cols[:, 1::2] = hi
    return np.column_stack([np.ones(lo.shape[0]), cols])


def width_design(lo, hi):
    """``[1, x_1^w, ..., x_p^w]``."""
    return np.column_stack([np.ones(lo.shape[0]), hi - lo])
