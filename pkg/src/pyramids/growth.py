"""Least-squares fit of ``c_n ~ A H^n n^C`` in log space."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .lego import GrowthEstimate


def _design(n):
    n = np.asarray(n, dtype=float).ravel()
    return np.column_stack([np.ones_like(n), n, np.log(n)])


class GrowthFitter(RegressorMixin, BaseEstimator):
    """Fit ``ln c = ln A + n ln H + C ln n``.

    ``X`` is a single column of sizes ``n >= 1``; ``y`` holds the positive
    counts.  After fitting, ``A_``, ``H_``, ``C_`` and ``H_stderr_`` are set.
    ``predict`` returns counts (not logs).
    """

    def __init__(self, min_points=4):
        self.min_points = min_points

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_min_samples=self.min_points, y_numeric=True)
        if X.shape[1] != 1:
            raise ValueError("X must have a single column of sizes")
        if np.any(X <= 0) or np.any(y <= 0):
            raise ValueError("sizes and counts must be positive")
        D = _design(X[:, 0])
        if np.linalg.matrix_rank(D) < 3:
            raise np.linalg.LinAlgError("singular design matrix: sizes are collinear")
        logy = np.log(y)
        coef, *_ = np.linalg.lstsq(D, logy, rcond=None)
        resid = logy - D @ coef
        dof = len(y) - 3
        if dof > 0:
            sigma2 = float(resid @ resid) / dof
            cov = sigma2 * np.linalg.inv(D.T @ D)
            se_log_h = math.sqrt(max(cov[1, 1], 0.0))
        else:
            se_log_h = math.inf
        self.coef_ = coef
        self.A_ = float(math.exp(coef[0]))
        self.H_ = float(math.exp(coef[1]))
        self.C_ = float(coef[2])
        self.H_stderr_ = self.H_ * se_log_h
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return np.exp(_design(X[:, 0]) @ self.coef_)


def fit_growth(counts, sizes=None, start=1):
    """Fit ``A H^n n^C`` to a sequence; ``sizes`` defaults to ``start, start+1, ...``.

    Returns a :class:`GrowthEstimate` whose estimate is ``H``.
    """
    counts = [float(c) for c in counts]
    if sizes is None:
        sizes = list(range(start, start + len(counts)))
    if len(sizes) != len(counts):
        raise ValueError("sizes and counts differ in length")
    if len(counts) < 4:
        raise ValueError("at least 4 data points are needed")
    est = GrowthFitter().fit(np.asarray(sizes, dtype=float).reshape(-1, 1), np.asarray(counts))
    return GrowthEstimate(est.H_, est.H_stderr_, len(counts), None,
                          {"A": est.A_, "H": est.H_, "C": est.C_, "sizes": [int(s) for s in sizes]})
