"""Method-id façade over the estimators.

:func:`fit` returns an immutable :class:`FittedModel` that serialises to
plain JSON and reproduces predictions bit-identically once re-loaded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from . import estimators as est
from .exceptions import DimensionMismatch, UnknownRegressor
from .interval import Interval, IntervalDataset
from .validation import split_bounds

METHODS = {
    "CM": est.CenterMethod,
    "MinMax": est.MinMaxMethod,
    "CRM": est.CenterRangeMethod,
    "CCRM": est.ConstrainedCenterRangeMethod,
    "CIM": est.CompleteInformationMethod,
    "LM": est.LinearModel,
    "LMc": est.ConstrainedLinearModel,
    "LMw": est.WeaklyConstrainedLinearModel,
    "PM": est.ParametrizedModel,
}
TABLE_ORDER = ("CM", "MinMax", "CRM", "CCRM", "CIM", "PM", "LMc", "LMw")
_BY_LOWER = {m.lower(): m for m in METHODS}


def method_id(name) -> str:
    """Canonical spelling of a method id, matched case-insensitively."""
    key = str(name).strip().lower()
    if key not in _BY_LOWER:
        raise UnknownRegressor(f"unknown method {name!r}; choose one of {', '.join(METHODS)}")
    return _BY_LOWER[key]


_GREEK = {"alpha": "α", "beta": "β", "gamma": "γ", "omega": "ω", "eta": "η", "theta": "θ"}
_SUP = {"lo": "-", "hi": "+", "c": "c", "r": "r"}


def symbol(key: str) -> str:
    """Display form of a coefficient key, e.g. ``beta_lo_0`` -> ``β^-_0``."""
    m = re.fullmatch(r"([a-z]+)(?:_(lo|hi|c|r))?(?:_(\d+))?", key)
    if not m or m.group(1) not in _GREEK:
        return key
    name, sup, sub = m.groups()
    out = _GREEK[name]
    if sup:
        out += "^" + _SUP[sup]
    if sub is not None:
        out += "_" + sub
    return out


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.generic):
        return v.item()
    return v


@dataclass(frozen=True)
class Prediction:
    lo: np.ndarray
    hi: np.ndarray

    @property
    def coherent(self):
        """Per-observation flag ``lo <= hi``."""
        return self.lo <= self.hi

    @property
    def all_coherent(self):
        return bool(np.all(self.coherent))


@dataclass(frozen=True)
class FittedModel:
    method: str
    coefficients: MappingProxyType
    p: int
    names: tuple
    target: str = "y"
    params: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    diagnostics: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "method", method_id(self.method))
        object.__setattr__(self, "coefficients", MappingProxyType(dict(self.coefficients)))
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        object.__setattr__(self, "diagnostics", MappingProxyType(dict(self.diagnostics)))
        object.__setattr__(self, "names", tuple(self.names))
        # Checks the container matches the method by rebuilding the estimator.
        object.__setattr__(self, "_estimator", self._rebuild())

    def _rebuild(self):
        cls = METHODS[self.method]
        try:
            e = cls.from_coefficients(self.coefficients, self.p, self.params)
        except KeyError as exc:
            raise DimensionMismatch(f"{self.method} model is missing coefficient {exc.args[0]}") from None
        expected = list(e.coefficients())
        if sorted(expected) != sorted(self.coefficients):
            extra = sorted(set(self.coefficients) - set(expected))
            raise DimensionMismatch(f"unexpected coefficients for {self.method}: {extra}")
        return e

    @property
    def estimator(self):
        return self._estimator

    def to_dict(self):
        return {
            "method": self.method,
            "p": self.p,
            "names": list(self.names),
            "target": self.target,
            "coefficients": {k: float(v) for k, v in self.coefficients.items()},
            "params": {k: _plain(v) for k, v in self.params.items()},
            "diagnostics": {k: _plain(v) for k, v in self.diagnostics.items()},
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["method"], d["coefficients"], int(d["p"]), tuple(d["names"]),
                   d.get("target", "y"), d.get("params", {}), d.get("diagnostics", {}))


def fit(method, ds: IntervalDataset, **options) -> FittedModel:
    """Fit ``method`` on ``ds``.

    ``options`` go to the estimator constructor, e.g. ``strategy="joint"``
    for LMc or ``box_cox=False`` for PM.
    """
    m = method_id(method)
    e = METHODS[m](**options).fit(ds)
    return FittedModel(m, e.coefficients(), ds.p, ds.names, ds.target, e.params(), e.diagnostics_)


def _as_bounds(model, x):
    if isinstance(x, IntervalDataset):
        lo, hi = np.array(x.x_lo), np.array(x.x_hi)
    elif isinstance(x, Interval):
        lo, hi = np.array([[x.lo]]), np.array([[x.hi]])
    else:
        seq = x if isinstance(x, np.ndarray) else list(x)
        if len(seq) and all(isinstance(v, Interval) for v in seq):
            lo = np.array([[v.lo for v in seq]])
            hi = np.array([[v.hi for v in seq]])
        else:
            lo, hi = split_bounds(seq)
    if lo.shape[1] != model.p:
        raise DimensionMismatch(f"model expects {model.p} regressors, got {lo.shape[1]}")
    return lo, hi


def predict(model: FittedModel, x) -> Prediction:
    """Predict raw bound pairs.

    ``x`` is one observation as a length-``p`` sequence of :class:`Interval`
    (or a single Interval when ``p == 1``), an ``(n, 2p)`` bound array, or a
    dataset. Flipped pairs are returned unchanged; see
    :attr:`Prediction.coherent`.
    """
    lo, hi = _as_bounds(model, x)
    out = model.estimator.predict(np.stack([lo, hi], axis=-1))
    return Prediction(out[:, 0], out[:, 1])
