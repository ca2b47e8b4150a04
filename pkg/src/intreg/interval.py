"""Interval values, interval datasets and their summary statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exceptions import DataError, EmptyInput, FlippedBounds, LengthMismatch, NonFinite


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lo, hi]`` with ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise NonFinite(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise FlippedBounds(f"lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def center(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def range(self) -> float:
        return self.hi - self.lo

    @property
    def radius(self) -> float:
        return self.range / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi


def make_interval(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def check_bounds(lo, hi, what="interval"):
    """Validate paired bound arrays, returning them as float arrays.

    Raises :class:`FlippedBounds` naming the first offending row.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.shape != hi.shape:
        raise LengthMismatch(f"{what}: lower and upper bounds differ in shape {lo.shape} vs {hi.shape}")
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise NonFinite(f"{what}: bounds must be finite")
    bad = np.argwhere(lo > hi)
    if bad.size:
        row = int(bad[0][0])
        raise FlippedBounds(f"{what}: lower bound exceeds upper bound in row {row}", row=row)
    return lo, hi


@dataclass(frozen=True)
class IntervalDataset:
    """``n`` observations of ``p`` interval regressors and one interval regressand.

    Bounds are held as read-only arrays: ``x_lo``/``x_hi`` of shape ``(n, p)``
    and ``y_lo``/``y_hi`` of shape ``(n,)``.
    """

    x_lo: np.ndarray
    x_hi: np.ndarray
    y_lo: np.ndarray
    y_hi: np.ndarray
    names: tuple = ()
    target: str = "y"

    def __post_init__(self):
        x_lo, x_hi = check_bounds(self.x_lo, self.x_hi, "regressors")
        if x_lo.ndim == 1:
            x_lo, x_hi = x_lo[:, None], x_hi[:, None]
        if x_lo.ndim != 2:
            raise DataError("regressor bounds must be 2-D (n, p)")
        y_lo, y_hi = check_bounds(self.y_lo, self.y_hi, "regressand")
        y_lo, y_hi = y_lo.ravel(), y_hi.ravel()
        n, p = x_lo.shape
        if n < 1:
            raise EmptyInput("dataset has no observations")
        if p < 1:
            raise DataError("dataset needs at least one regressor")
        if y_lo.shape[0] != n:
            raise LengthMismatch(f"regressand has {y_lo.shape[0]} rows, regressors have {n}")
        names = tuple(self.names) if self.names else tuple(f"x{j + 1}" for j in range(p))
        if len(names) != p:
            raise DataError(f"{len(names)} names given for {p} regressors")
        allnames = names + (self.target,)
        if any(not str(nm) for nm in allnames) or len(set(allnames)) != len(allnames):
            raise DataError("column names must be unique and non-empty")
        for attr, value in (("x_lo", x_lo), ("x_hi", x_hi), ("y_lo", y_lo), ("y_hi", y_hi)):
            object.__setattr__(self, attr, _frozen(value))
        object.__setattr__(self, "names", names)

    @classmethod
    def from_intervals(cls, regressors: Mapping[str, Sequence[Interval]], regressand: Sequence[Interval],
                       target: str = "y") -> "IntervalDataset":
        names = tuple(regressors)
        cols = [list(regressors[nm]) for nm in names]
        x_lo = np.array([[iv.lo for iv in col] for col in cols]).T
        x_hi = np.array([[iv.hi for iv in col] for col in cols]).T
        ys = list(regressand)
        return cls(x_lo, x_hi, [iv.lo for iv in ys], [iv.hi for iv in ys], names=names, target=target)

    @property
    def n(self) -> int:
        return self.x_lo.shape[0]

    @property
    def p(self) -> int:
        return self.x_lo.shape[1]

    @property
    def X(self) -> np.ndarray:
        """Regressors as an ``(n, 2p)`` array of interleaved ``lo, hi`` columns."""
        out = np.empty((self.n, 2 * self.p))
        out[:, 0::2] = self.x_lo
        out[:, 1::2] = self.x_hi
        return out

    @property
    def y(self) -> np.ndarray:
        """Regressand as an ``(n, 2)`` array of ``lo, hi`` columns."""
        return np.column_stack([self.y_lo, self.y_hi])

    def column(self, name: str) -> list:
        if name == self.target:
            return [Interval(a, b) for a, b in zip(self.y_lo, self.y_hi)]
        j = self.names.index(name)
        return [Interval(a, b) for a, b in zip(self.x_lo[:, j], self.x_hi[:, j])]

    def subset(self, rows) -> "IntervalDataset":
        rows = np.asarray(rows)
        return IntervalDataset(self.x_lo[rows], self.x_hi[rows], self.y_lo[rows], self.y_hi[rows],
                               names=self.names, target=self.target)

    def __eq__(self, other):
        if not isinstance(other, IntervalDataset):
            return NotImplemented
        return (self.names == other.names and self.target == other.target
                and all(np.array_equal(getattr(self, a), getattr(other, a))
                        for a in ("x_lo", "x_hi", "y_lo", "y_hi")))

    __hash__ = None


@dataclass(frozen=True)
class ColumnSummary:
    mean_center: float
    sd_center: float
    mean_range: float
    sd_range: float
    degenerate: bool = False


@dataclass(frozen=True)
class DatasetSummary:
    columns: Mapping[str, ColumnSummary] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.columns[name]


def _summarize_column(lo, hi):
    center = (lo + hi) / 2
    width = hi - lo
    if len(lo) < 2:
        return ColumnSummary(float(center.mean()), 0.0, float(width.mean()), 0.0, degenerate=True)
    return ColumnSummary(float(center.mean()), float(center.std(ddof=1)),
                         float(width.mean()), float(width.std(ddof=1)))


def summarize(ds: IntervalDataset) -> DatasetSummary:
    """Mean and sample standard deviation (``n - 1``) of centers and ranges per column."""
    cols = {nm: _summarize_column(ds.x_lo[:, j], ds.x_hi[:, j]) for j, nm in enumerate(ds.names)}
    cols[ds.target] = _summarize_column(ds.y_lo, ds.y_hi)
    return DatasetSummary(cols)
