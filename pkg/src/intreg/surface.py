"""Prediction surfaces over a regressor's center and width.

One regressor is swept over a ``(center, width)`` grid while the others are
held at their mean training intervals. Cells come out in long format,
row-major over ``(center, width)``.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from .exceptions import DataError, UnknownRegressor
from .regressors import FittedModel, predict

CSV_COLUMNS = ("x_center", "x_width", "y_center_hat", "y_width_hat")


@dataclass(frozen=True)
class Axis:
    min: float
    max: float
    steps: int = 20

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 2:
            raise DataError(f"axis needs at least 2 steps, got {self.steps}")
        if not (np.isfinite(self.min) and np.isfinite(self.max)) or self.min > self.max:
            raise DataError(f"invalid axis range [{self.min}, {self.max}]")

    def values(self):
        return np.linspace(self.min, self.max, int(self.steps))


@dataclass(frozen=True)
class SurfaceGrid:
    method: str
    regressor: str
    center: Axis
    width: Axis
    held: dict
    cells: np.ndarray  # (steps_c * steps_w, 4) in CSV_COLUMNS order

    def column(self, name):
        return self.cells[:, CSV_COLUMNS.index(name)]

    def as_matrix(self, name):
        """Column ``name`` reshaped to ``(steps_c, steps_w)``."""
        return self.column(name).reshape(self.center.steps, self.width.steps)

    def to_csv(self):
        buf = io.StringIO()
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for row in self.cells:
            buf.write(",".join(repr(float(v)) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self):
        meta = {
            "method": self.method,
            "regressor": self.regressor,
            "center": {"min": self.center.min, "max": self.center.max, "steps": self.center.steps},
            "width": {"min": self.width.min, "max": self.width.max, "steps": self.width.steps},
            "held": {k: list(v) for k, v in self.held.items()},
            "columns": list(CSV_COLUMNS),
            "cells": self.cells.tolist(),
        }
        return json.dumps(meta, indent=2)


def _axis(spec, default, steps):
    if spec is None:
        return Axis(float(default[0]), float(default[1]), steps)
    if isinstance(spec, Axis):
        return spec
    lo, hi, n = spec
    return Axis(float(lo), float(hi), int(n))


def sweep(model: FittedModel, ds, regressor, center=None, width=None, steps=20) -> SurfaceGrid:
    """Predict over a center-width grid for one regressor.

    Parameters
    ----------
    model : FittedModel
    ds : IntervalDataset
        Training data; supplies default axis ranges and the held intervals.
    regressor : str
        Name of the swept regressor.
    center, width : (min, max, steps) or Axis, optional
        Default to the observed range of the regressor with ``steps`` points.

    Raises
    ------
    UnknownRegressor
        If ``regressor`` is not a column of ``ds``.
    """
    if regressor not in ds.names:
        raise UnknownRegressor(f"no regressor named {regressor!r}; have {', '.join(ds.names)}")
    j = ds.names.index(regressor)
    c_obs = (ds.x_lo[:, j] + ds.x_hi[:, j]) / 2
    w_obs = ds.x_hi[:, j] - ds.x_lo[:, j]
    c_axis = _axis(center, (c_obs.min(), c_obs.max()), steps)
    w_axis = _axis(width, (w_obs.min(), w_obs.max()), steps)
    if w_axis.min < 0:
        raise DataError("widths must be nonnegative")

    cc, ww = np.meshgrid(c_axis.values(), w_axis.values(), indexing="ij")
    cc, ww = cc.ravel(), ww.ravel()
    m = cc.size
    lo = np.tile(ds.x_lo.mean(axis=0), (m, 1))
    hi = np.tile(ds.x_hi.mean(axis=0), (m, 1))
    lo[:, j] = cc - ww / 2
    hi[:, j] = cc + ww / 2
    pred = predict(model, np.stack([lo, hi], axis=-1).reshape(m, -1))
    cells = np.column_stack([cc, ww, (pred.lo + pred.hi) / 2, pred.hi - pred.lo])
    held = {name: (float(ds.x_lo[:, k].mean()), float(ds.x_hi[:, k].mean()))
            for k, name in enumerate(ds.names) if k != j}
    return SurfaceGrid(model.method, regressor, c_axis, w_axis, held, cells)
