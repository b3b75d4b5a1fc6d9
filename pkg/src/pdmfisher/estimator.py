"""scikit-learn compatible wrappers.

``BoundStateMeasures`` maps rows of (n, a) to the uncertainty/Fisher
measures of that state, so tables can be produced inside ordinary
pipelines.  ``SpectrumOracle`` fits the finite-difference eigenproblem once
and predicts eigenvalues for requested levels.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .measures import TABLE_COLUMNS, report
from .model import params_from_v0
from .oracle import solve_spectrum

__all__ = ["BoundStateMeasures", "SpectrumOracle", "check_levels", "check_state_grid"]

MEASURE_NAMES = tuple(key for key, _ in TABLE_COLUMNS[2:])


def check_levels(levels) -> np.ndarray:
    """Validate a 1-D collection of non-negative integer level indices."""
    arr = check_array(np.asarray(levels, dtype=float).reshape(-1, 1), ensure_all_finite=True)
    arr = arr.ravel()
    if np.any(arr < 0) or np.any(arr != np.round(arr)):
        raise ValueError("levels must be non-negative integers")
    return arr.astype(int)


def check_state_grid(X) -> np.ndarray:
    """Validate an (n_samples, 2) array whose columns are level n and width a."""
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] != 2:
        raise ValueError(f"expected 2 columns (n, a), got {X.shape[1]}")
    check_levels(X[:, 0])
    if np.any(X[:, 1] <= 0):
        raise ValueError("width a must be positive")
    return X


class BoundStateMeasures(TransformerMixin, BaseEstimator):
    """Transform (n, a) rows into <x^2>, <x>, Delta x, <p^2>, Delta p,
    Delta x Delta p, I_rho and I_gamma.

    Parameters
    ----------
    v0 : float, default=1/32
        Dimensionless potential depth delta * V0, at most 1/4.
    m0 : float, default=1.0
        Mass scale.
    tol : float, default=1e-11
        Relative tolerance of the adaptive moment integrals.
    """

    def __init__(self, v0=1.0 / 32.0, m0=1.0, tol=1e-11):
        self.v0 = v0
        self.m0 = m0
        self.tol = tol

    def fit(self, X, y=None):
        X = check_state_grid(X)
        # validates v0 and m0 eagerly
        params_from_v0(self.v0, 1.0, self.m0)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_state_grid(X)
        out = np.empty((X.shape[0], len(MEASURE_NAMES)))
        for i, (n, a) in enumerate(X):
            row = report(params_from_v0(self.v0, a, self.m0), int(n), self.tol)
            out[i] = [getattr(row, key) for key in MEASURE_NAMES]
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(MEASURE_NAMES, dtype=object)


class SpectrumOracle(BaseEstimator):
    """Finite-difference eigenvalues eps_n of the transformed problem."""

    def __init__(self, v0=1.0 / 32.0, grid_points=4096, num_levels=4, scheme="factored"):
        self.v0 = v0
        self.grid_points = grid_points
        self.num_levels = num_levels
        self.scheme = scheme

    def fit(self, X=None, y=None):
        estimate = solve_spectrum(self.v0, self.grid_points, self.num_levels, self.scheme)
        self.eigenvalues_ = estimate.eigenvalues
        self.richardson_error_ = estimate.richardson_error
        return self

    def predict(self, X):
        check_is_fitted(self, "eigenvalues_")
        levels = check_levels(X)
        if np.any(levels >= len(self.eigenvalues_)):
            raise ValueError(f"only {len(self.eigenvalues_)} levels were fitted")
        return self.eigenvalues_[levels]
