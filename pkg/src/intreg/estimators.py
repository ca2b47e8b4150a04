"""Linear regression estimators for interval-valued data.

Every estimator takes regressors as an ``(n, 2p)`` array of interleaved
``lo, hi`` columns (or ``(n, p, 2)``, or an :class:`IntervalDataset`) and a
regressand of shape ``(n, 2)``. ``predict`` returns raw ``(lo, hi)`` pairs
of shape ``(n, 2)``. Flipped pairs are never swapped, so incoherent
predictions stay visible to the caller.
"""

from __future__ import annotations

import warnings
from collections import OrderedDict

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .boxcox import LAMBDA_GRID, BoxCoxTransform, ranges_nonnegative, select_lambda
from .exceptions import DimensionMismatch, SingularSystem
from .linalg import solve_ls, solve_nnls, solve_partial_nnls
from .validation import (
    bound_design,
    center_design,
    check_Xy,
    split_bounds,
    width_design,
)

PIVOT_RTOL = 1e-12
COHERENCE_ATOL = 1e-9


class IntervalRegressor(RegressorMixin, BaseEstimator):
    """Shared fit/predict plumbing.

    Subclasses implement ``_fit(lo, hi, y_lo, y_hi)``, ``_predict(lo, hi)``
    and the coefficient mapping ``_coefficient_items`` / ``_load``.
    """

    def fit(self, X, y=None):
        """Fit on interval regressors ``X`` and interval regressand ``y``.

        Parameters
        ----------
        X : array_like of shape (n, 2p) or (n, p, 2), or IntervalDataset
        y : array_like of shape (n, 2), optional
            May be omitted when ``X`` is a dataset.

        Returns
        -------
        self
        """
        lo, hi, y_lo, y_hi = check_Xy(X, y)
        self.n_features_in_ = lo.shape[1]
        self._solves = []
        extra = self._fit(lo, hi, y_lo, y_hi) or {}
        p_lo, p_hi = self._predict(lo, hi)
        self.diagnostics_ = {
            "n_samples": int(lo.shape[0]),
            "residuals_lo": y_lo - p_lo,
            "residuals_hi": y_hi - p_hi,
            "coherence_violations": int(np.sum(p_lo > p_hi)),
            "underdetermined": bool(any(s[0] < s[1] for s in self._solves)),
            "used_minimum_norm": bool(any(s[2] for s in self._solves)),
            **extra,
        }
        del self._solves
        return self

    def predict(self, X):
        """Predict raw ``(lo, hi)`` bound pairs, shape ``(n, 2)``."""
        check_is_fitted(self, "n_features_in_")
        lo, hi = split_bounds(X)
        if lo.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"model was fitted on {self.n_features_in_} regressors, got {lo.shape[1]}")
        p_lo, p_hi = self._predict(lo, hi)
        return np.column_stack([p_lo, p_hi])

    def coefficients(self):
        """Fitted coefficients keyed by symbol name, in canonical order."""
        check_is_fitted(self, "n_features_in_")
        return OrderedDict((k, float(v)) for k, v in self._coefficient_items())

    def params(self):
        """Fitted quantities other than coefficients that prediction needs."""
        return {}

    @classmethod
    def from_coefficients(cls, coefficients, p, params=None, **init):
        """Rebuild a fitted estimator from :meth:`coefficients` output."""
        est = cls(**init)
        est.n_features_in_ = int(p)
        est._load(dict(coefficients), dict(params or {}))
        return est

    def _record(self, design, sol):
        self._solves.append((design.shape[0], design.shape[1], sol.used_minimum_norm))
        return sol.coefficients

    def _ls(self, design, target):
        return self._record(design, solve_ls(design, target))

    def _nnls(self, design, target):
        return self._record(design, solve_nnls(design, target))

    def _p(self):
        return range(1, self.n_features_in_ + 1)


def _pull(coefficients, keys):
    return np.array([coefficients[k] for k in keys], dtype=float)


class CenterMethod(IntervalRegressor):
    """Least squares on interval centers, applied to both bounds."""

    def _fit(self, lo, hi, y_lo, y_hi):
        self.coef_ = self._ls(center_design(lo, hi), (y_lo + y_hi) / 2)

    def _predict(self, lo, hi):
        b = self.coef_
        return b[0] + lo @ b[1:], b[0] + hi @ b[1:]

    def _keys(self):
        return [f"beta_c_{j}" for j in range(self.n_features_in_ + 1)]

    def _coefficient_items(self):
        return zip(self._keys(), self.coef_)

    def _load(self, c, params):
        self.coef_ = _pull(c, self._keys())


class MinMaxMethod(IntervalRegressor):
    """Independent least-squares fits of lower on lower and upper on upper bounds."""

    def _fit(self, lo, hi, y_lo, y_hi):
        ones = np.ones((lo.shape[0], 1))
        self.coef_lo_ = self._ls(np.hstack([ones, lo]), y_lo)
        self.coef_hi_ = self._ls(np.hstack([ones, hi]), y_hi)

    def _predict(self, lo, hi):
        a, b = self.coef_lo_, self.coef_hi_
        return a[0] + lo @ a[1:], b[0] + hi @ b[1:]

    def _keys(self, side):
        return [f"beta_{side}_{j}" for j in range(self.n_features_in_ + 1)]

    def _coefficient_items(self):
        return [*zip(self._keys("lo"), self.coef_lo_), *zip(self._keys("hi"), self.coef_hi_)]

    def _load(self, c, params):
        self.coef_lo_ = _pull(c, self._keys("lo"))
        self.coef_hi_ = _pull(c, self._keys("hi"))


class CenterRangeMethod(IntervalRegressor):
    """Separate least-squares fits for centers and radii."""

    def _fit_radius(self, design, target):
        return self._ls(design, target)

    def _fit(self, lo, hi, y_lo, y_hi):
        self.coef_center_ = self._ls(center_design(lo, hi), (y_lo + y_hi) / 2)
        r_design = np.column_stack([np.ones(lo.shape[0]), (hi - lo) / 2])
        self.coef_radius_ = self._fit_radius(r_design, (y_hi - y_lo) / 2)

    def _predict(self, lo, hi):
        bc, br = self.coef_center_, self.coef_radius_
        c = bc[0] + ((lo + hi) / 2) @ bc[1:]
        r = br[0] + ((hi - lo) / 2) @ br[1:]
        return c - r, c + r

    def _keys(self, part):
        return [f"beta_{part}_{j}" for j in range(self.n_features_in_ + 1)]

    def _coefficient_items(self):
        return [*zip(self._keys("c"), self.coef_center_), *zip(self._keys("r"), self.coef_radius_)]

    def _load(self, c, params):
        self.coef_center_ = _pull(c, self._keys("c"))
        self.coef_radius_ = _pull(c, self._keys("r"))


class ConstrainedCenterRangeMethod(CenterRangeMethod):
    """Center-range method with nonnegative radius coefficients, intercept included."""

    def _fit_radius(self, design, target):
        return self._nnls(design, target)


def _cim_system(lo, hi, y_lo, y_hi):
    n, p = lo.shape
    # Variable 0 is the degenerate interval [1, 1].
    a_lo = np.column_stack([np.ones(n), lo])
    a_hi = np.column_stack([np.ones(n), hi])
    c = (a_lo + a_hi) / 2
    # Distinct variables: (1/4) sum of the four bound products, which is sum c_a c_b.
    M = c.T @ c
    diag = np.sum(a_lo ** 2 + a_lo * a_hi + a_hi ** 2, axis=0) / 3
    M[np.diag_indices(p + 1)] = diag
    b = c.T @ ((y_lo + y_hi) / 2)
    return M, b


class CompleteInformationMethod(IntervalRegressor):
    """Regression with intervals treated as uniform hypercubes.

    The normal equations use the interval inner product: ``(1/3)
    sum(a^-^2 + a^- a^+ + a^+^2)`` for a variable with itself and the
    center cross product otherwise. Bound selection ``tau_j`` follows the
    sign of ``beta_j`` so predictions are coherent by construction.
    """

    def _fit(self, lo, hi, y_lo, y_hi):
        M, b = _cim_system(lo, hi, y_lo, y_hi)
        with warnings.catch_warnings():
            # Singularity is reported below as SingularSystem.
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(M)
        pivots = np.abs(np.diag(lu))
        scale = np.max(np.abs(M))
        if scale == 0 or pivots.min() < PIVOT_RTOL * scale:
            raise SingularSystem("interval inner-product matrix is numerically singular")
        self._solves.append((lo.shape[0], lo.shape[1] + 1, False))
        self.coef_ = lu_solve((lu, piv), b)
        return {"tau": self.tau_.tolist()}

    @property
    def tau_(self):
        return (self.coef_[1:] > 0).astype(int)

    def _predict(self, lo, hi):
        b = self.coef_
        pos = self.tau_.astype(bool)
        first = np.where(pos, lo, hi)
        second = np.where(pos, hi, lo)
        return b[0] + first @ b[1:], b[0] + second @ b[1:]

    def _keys(self):
        return [f"beta_{j}" for j in range(self.n_features_in_ + 1)]

    def _coefficient_items(self):
        return zip(self._keys(), self.coef_)

    def _load(self, c, params):
        self.coef_ = _pull(c, self._keys())


class LinearModel(IntervalRegressor):
    """Unconstrained bound-width model.

    ``y^- = eta + sum(alpha_j x_j^- + beta_j x_j^+)`` and
    ``y^+ = y^- + theta + sum(gamma_j x_j^w)``, fitted jointly on the stacked
    ``2n``-row design.
    """

    def _fit_unconstrained(self, lo, hi, y_lo, y_hi):
        Xs, Xw = bound_design(lo, hi), width_design(lo, hi)
        design = np.block([[Xs, np.zeros_like(Xw)], [Xs, Xw]])
        coef = self._ls(design, np.concatenate([y_lo, y_hi]))
        k = Xs.shape[1]
        return coef[:k], coef[k:]

    def _fit(self, lo, hi, y_lo, y_hi):
        self.coef_star_, self.coef_width_ = self._fit_unconstrained(lo, hi, y_lo, y_hi)

    def _predict(self, lo, hi):
        p_lo = bound_design(lo, hi) @ self.coef_star_
        return p_lo, p_lo + width_design(lo, hi) @ self.coef_width_

    def _star_keys(self):
        keys = ["eta"]
        for j in self._p():
            keys += [f"alpha_{j}", f"beta_{j}"]
        return keys

    def _width_keys(self):
        return ["theta"] + [f"gamma_{j}" for j in self._p()]

    def _coefficient_items(self):
        return [*zip(self._star_keys(), self.coef_star_), *zip(self._width_keys(), self.coef_width_)]

    def _load(self, c, params):
        self.coef_star_ = _pull(c, self._star_keys())
        self.coef_width_ = _pull(c, self._width_keys())


class ConstrainedLinearModel(LinearModel):
    """Bound-width model with ``theta >= 0`` and ``gamma_j >= 0``.

    Parameters
    ----------
    strategy : {"two_stage", "joint"}
        ``"two_stage"`` keeps the unconstrained bound coefficients and refits
        the width coefficients by NNLS on the remaining upper-bound residual,
        only when some width coefficient is negative. ``"joint"`` solves the
        partially constrained problem over all coefficients at once.
    """

    def __init__(self, strategy="two_stage"):
        self.strategy = strategy

    def _constrain(self, lo, hi, y_lo, y_hi):
        star, width = self._fit_unconstrained(lo, hi, y_lo, y_hi)
        if np.all(width >= 0):
            return star, width, False
        Xs, Xw = bound_design(lo, hi), width_design(lo, hi)
        if self.strategy == "two_stage":
            width = self._nnls(Xw, y_hi - Xs @ star)
            return star, width, True
        if self.strategy == "joint":
            free = np.vstack([Xs, Xs])
            pos = np.vstack([np.zeros_like(Xw), Xw])
            sol = solve_partial_nnls(free, pos, np.concatenate([y_lo, y_hi]))
            self._solves.append((free.shape[0], free.shape[1] + pos.shape[1], sol.used_minimum_norm))
            return sol.coefficients[:Xs.shape[1]], sol.coefficients[Xs.shape[1]:], True
        raise ValueError(f"unknown strategy {self.strategy!r}; use 'two_stage' or 'joint'")

    def _fit(self, lo, hi, y_lo, y_hi):
        self.coef_star_, self.coef_width_, applied = self._constrain(lo, hi, y_lo, y_hi)
        return {"nnls_applied": applied}


class WeaklyConstrainedLinearModel(ConstrainedLinearModel):
    """Bound-width model constrained only when coherence is at risk.

    The unconstrained fit is kept when the hat-matrix projection of the
    regressand ranges onto ``[1, x^-, x^+]`` is nonnegative and the fitted
    in-sample predictions are coherent. Otherwise the constrained model is
    used. ``diagnostics_["path"]`` records which.
    """

    def _fit(self, lo, hi, y_lo, y_hi):
        passed, fitted = ranges_nonnegative(bound_design(lo, hi), y_hi - y_lo)
        info = {"precheck_passed": passed, "precheck_min_range": float(fitted.min())}
        if passed:
            self.coef_star_, self.coef_width_ = self._fit_unconstrained(lo, hi, y_lo, y_hi)
            p_lo, p_hi = self._predict(lo, hi)
            if np.all(p_lo <= p_hi + COHERENCE_ATOL):
                return {**info, "path": "unconstrained", "nnls_applied": False}
            reason = "incoherent"
        else:
            reason = "precheck"
        self.coef_star_, self.coef_width_, applied = self._constrain(lo, hi, y_lo, y_hi)
        return {**info, "path": "constrained", "fallback_reason": reason, "nnls_applied": applied}


class ParametrizedModel(IntervalRegressor):
    """Bounds regressed separately on every regressor bound.

    ``y^- = beta^-_0 + sum(alpha^-_j x_j^- + omega^-_j x_j^+)`` and likewise
    for ``y^+``. If the hat-matrix fitted ranges are not all nonnegative the
    regressand is Box-Cox transformed before fitting and predictions are
    mapped back.

    Parameters
    ----------
    box_cox : bool
        Allow the transform fallback. When False the plain fit is always used.
    lambda_grid : sequence of float, optional
        Powers tried in order; defaults to 1.0, 0.9, ..., -1.0.
    """

    def __init__(self, box_cox=True, lambda_grid=None):
        self.box_cox = box_cox
        self.lambda_grid = lambda_grid

    def _fit(self, lo, hi, y_lo, y_hi):
        Xs = bound_design(lo, hi)
        passed, fitted = ranges_nonnegative(Xs, y_hi - y_lo)
        info = {"precheck_passed": passed, "precheck_min_range": float(fitted.min())}
        self.transform_ = None
        if not passed and self.box_cox:
            from .interval import IntervalDataset

            ds = IntervalDataset(lo, hi, y_lo, y_hi)
            grid = LAMBDA_GRID if self.lambda_grid is None else tuple(self.lambda_grid)
            self.transform_ = select_lambda(ds, grid)
            y_lo = self.transform_.forward(y_lo)
            y_hi = self.transform_.forward(y_hi)
        self.coef_lo_ = self._ls(Xs, y_lo)
        self.coef_hi_ = self._ls(Xs, y_hi)
        t = self.transform_
        return {**info, "box_cox": "applied" if t else "not applied",
                "box_cox_lambda": t.lmbda if t else None,
                "box_cox_shift": t.shift if t else None}

    def _predict(self, lo, hi):
        Xs = bound_design(lo, hi)
        p_lo, p_hi = Xs @ self.coef_lo_, Xs @ self.coef_hi_
        if self.transform_ is not None:
            p_lo, p_hi = self.transform_.inverse(p_lo), self.transform_.inverse(p_hi)
        return p_lo, p_hi

    def _keys(self, side):
        keys = [f"beta_{side}_0"]
        for j in self._p():
            keys += [f"alpha_{side}_{j}", f"omega_{side}_{j}"]
        return keys

    def _coefficient_items(self):
        return [*zip(self._keys("lo"), self.coef_lo_), *zip(self._keys("hi"), self.coef_hi_)]

    def params(self):
        t = self.transform_
        return {} if t is None else {"box_cox_lambda": t.lmbda, "box_cox_shift": t.shift}

    def _load(self, c, params):
        self.coef_lo_ = _pull(c, self._keys("lo"))
        self.coef_hi_ = _pull(c, self._keys("hi"))
        if "box_cox_lambda" in params:
            self.transform_ = BoxCoxTransform(float(params["box_cox_lambda"]),
                                              float(params["box_cox_shift"]))
        else:
            self.transform_ = None
