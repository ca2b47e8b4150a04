"""In-sample fitness metrics for interval predictions."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import DimensionMismatch, EmptyInput, LengthMismatch
from .interval import Interval

METRIC_NAMES = ("rmse_lo", "rmse_hi", "mae_lo", "mae_hi", "mmre")


@dataclass(frozen=True)
class MetricsReport:
    """Per-bound errors and a coherence audit.

    ``mmre`` averages ``(|d^-/y^-| + |d^+/y^+|) / 2`` over observations;
    terms whose actual bound is exactly zero are dropped and counted in
    ``mmre_excluded``.
    """

    rmse_lo: float
    rmse_hi: float
    mae_lo: float
    mae_hi: float
    mmre: float
    mmre_excluded: int = 0
    coherence_violations: int = 0

    def as_dict(self):
        return asdict(self)

    def values(self):
        return tuple(getattr(self, m) for m in METRIC_NAMES)


def _pairs(seq, what):
    if isinstance(seq, np.ndarray):
        a = np.asarray(seq, dtype=float)
    else:
        seq = list(seq)
        a = np.array([[v.lo, v.hi] if isinstance(v, Interval) else list(v) for v in seq], dtype=float)
    if a.size == 0:
        raise EmptyInput(f"no {what} values")
    if a.ndim != 2 or a.shape[1] != 2:
        raise DimensionMismatch(f"{what} must be a sequence of (lo, hi) pairs, got shape {a.shape}")
    return a[:, 0], a[:, 1]


def _mmre(actual, predicted):
    keep = actual != 0
    rel = np.abs((actual[keep] - predicted[keep]) / actual[keep])
    return rel, int(np.sum(~keep))


def evaluate(actual, predicted) -> MetricsReport:
    """Compare actual intervals with predicted raw bound pairs.

    Parameters
    ----------
    actual : sequence of Interval or array_like of shape (n, 2)
    predicted : sequence of (lo, hi) pairs or array_like of shape (n, 2)
        Pairs may be flipped; they are counted, not corrected.

    Returns
    -------
    MetricsReport
    """
    y_lo, y_hi = _pairs(actual, "actual")
    p_lo, p_hi = _pairs(predicted, "predicted")
    if y_lo.shape != p_lo.shape:
        raise LengthMismatch(f"{y_lo.shape[0]} actual vs {p_lo.shape[0]} predicted observations")
    d_lo, d_hi = y_lo - p_lo, y_hi - p_hi
    rel_lo, ex_lo = _mmre(y_lo, p_lo)
    rel_hi, ex_hi = _mmre(y_hi, p_hi)
    kept = rel_lo.size + rel_hi.size
    # Mean over surviving terms; equals the per-observation half-sum when none are dropped.
    mmre = float((rel_lo.sum() + rel_hi.sum()) / kept) if kept else 0.0
    return MetricsReport(
        rmse_lo=float(np.sqrt(np.mean(d_lo ** 2))),
        rmse_hi=float(np.sqrt(np.mean(d_hi ** 2))),
        mae_lo=float(np.mean(np.abs(d_lo))),
        mae_hi=float(np.mean(np.abs(d_hi))),
        mmre=mmre,
        mmre_excluded=ex_lo + ex_hi,
        coherence_violations=int(np.sum(p_lo > p_hi)),
    )


def dataset_metrics(ds, predicted) -> MetricsReport:
    """:func:`evaluate` against the regressand of an :class:`IntervalDataset`."""
    return evaluate(np.column_stack([ds.y_lo, ds.y_hi]), predicted)
