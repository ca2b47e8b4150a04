"""Least-squares solvers shared by the estimators.

All three routines return an :class:`LsSolution`. Rank decisions use a
singular-value threshold relative to the largest singular value, so
designs with duplicated columns (degenerate intervals) get the
minimum-norm minimiser instead of an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, IterationLimit, NonFinite

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class LsSolution:
    coefficients: np.ndarray
    residual_norm: float
    rank: int
    used_minimum_norm: bool = False


def _check_system(X, y, allow_empty=False):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or y.ndim != 1:
        raise DimensionMismatch(f"expected 2-D design and 1-D target, got {X.shape} and {y.shape}")
    m, k = X.shape
    if m < 1 or (k < 1 and not allow_empty):
        raise DimensionMismatch(f"design must be at least 1x1, got {X.shape}")
    if y.shape[0] != m:
        raise DimensionMismatch(f"design has {m} rows but target has {y.shape[0]}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise NonFinite("design and target must be finite")
    return X, y


def solve_ls(X, y) -> LsSolution:
    """Minimum-norm minimiser of ``||y - X b||``.

    Singular values below ``1e-10`` times the largest are treated as zero.
    """
    X, y = _check_system(X, y)
    coef, _, rank, _ = np.linalg.lstsq(X, y, rcond=RANK_RTOL)
    resid = y - X @ coef
    return LsSolution(coef, float(np.linalg.norm(resid)), int(rank), bool(rank < X.shape[1]))


def nnls_tolerance(X, y):
    return 1e-8 * float(np.max(np.abs(X.T @ y), initial=0.0))


def solve_nnls(X, y, max_iter=None) -> LsSolution:
    """Lawson-Hanson active-set solution of ``min ||y - X b||`` s.t. ``b >= 0``.

    Parameters
    ----------
    X : array_like, shape (m, k)
    y : array_like, shape (m,)
    max_iter : int, optional
        Cap on outer iterations; ``3 k`` by default.

    Returns
    -------
    LsSolution
        ``coefficients`` satisfy the KKT conditions with gradient
        ``X.T @ (y - X b)`` and tolerance ``1e-8 * max|X.T @ y|``.

    Raises
    ------
    IterationLimit
        When the outer-iteration cap is reached without convergence.
    """
    X, y = _check_system(X, y)
    m, k = X.shape
    tol = nnls_tolerance(X, y)
    x = np.zeros(k)
    passive = np.zeros(k, dtype=bool)
    # Columns whose entry failed to move off zero since the gradient last changed.
    blocked = np.zeros(k, dtype=bool)
    w = X.T @ y
    cap = 3 * k if max_iter is None else int(max_iter)
    outer = 0
    any_min_norm = False

    while True:
        candidates = ~passive & ~blocked
        if not candidates.any() or w[candidates].max() <= tol:
            break
        outer += 1
        if outer > cap:
            raise IterationLimit(f"NNLS did not converge within {cap} outer iterations")
        j = int(np.flatnonzero(candidates)[np.argmax(w[candidates])])
        passive[j] = True

        first = True
        while True:
            idx = np.flatnonzero(passive)
            sub = solve_ls(X[:, idx], y)
            any_min_norm |= sub.used_minimum_norm
            z = np.zeros(k)
            z[idx] = sub.coefficients
            if first and z[j] <= 0:
                # Entering column cannot improve the objective numerically.
                passive[j] = False
                blocked[j] = True
                break
            first = False
            if np.all(z[idx] > 0):
                x = z
                blocked[:] = False
                break
            neg = idx[z[idx] <= 0]
            step = np.min(x[neg] / (x[neg] - z[neg]))
            x = x + step * (z - x)
            leaving = passive & (x <= 1e-15 * max(1.0, np.max(np.abs(x))))
            passive &= ~leaving
            x[~passive] = 0.0
            if not passive.any():
                break
        w = X.T @ (y - X @ x)

    x = np.maximum(x, 0.0)
    rank = int(np.linalg.matrix_rank(X[:, passive], tol=None)) if passive.any() else 0
    return LsSolution(x, float(np.linalg.norm(y - X @ x)), rank, bool(any_min_norm))


def _column_space(A):
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], 0))
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((A.shape[0], 0))
    return u[:, s > RANK_RTOL * s[0]]


def solve_partial_nnls(X_free, X_pos, y) -> LsSolution:
    """Least squares with a sign constraint on a coefficient subset.

    Minimises ``||y - X_free b_f - X_pos b_p||`` subject to ``b_p >= 0``.
    ``b_f`` is eliminated by projecting onto the orthogonal complement of
    ``col(X_free)``, NNLS runs on the reduced problem, and ``b_f`` is
    recovered by back-substitution. Coefficients are returned as
    ``[b_f, b_p]``.
    """
    X_free, y = _check_system(X_free, y)
    X_pos = np.asarray(X_pos, dtype=float)
    if X_pos.ndim == 1:
        X_pos = X_pos[:, None]
    if X_pos.shape[0] != X_free.shape[0]:
        raise DimensionMismatch(f"row counts differ: {X_free.shape[0]} vs {X_pos.shape[0]}")
    if X_pos.shape[1] == 0:
        return solve_ls(X_free, y)
    if not np.all(np.isfinite(X_pos)):
        raise NonFinite("design must be finite")

    Q = _column_space(X_free)
    y_red = y - Q @ (Q.T @ y)
    X_red = X_pos - Q @ (Q.T @ X_pos)
    pos = solve_nnls(X_red, y_red).coefficients
    free = solve_ls(X_free, y - X_pos @ pos)
    full = np.hstack([X_free, X_pos])
    coef = np.concatenate([free.coefficients, pos])
    rank = int(np.linalg.matrix_rank(full))
    return LsSolution(coef, float(np.linalg.norm(y - full @ coef)), rank,
                      bool(free.used_minimum_norm or rank < full.shape[1]))
