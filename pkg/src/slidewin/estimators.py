"""scikit-learn wrapper: sliding window aggregates as a column-wise transform."""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import gallery
from .algebra import UNDEF
from .cli import CliError, check_compatible, run_algorithm


class SlidingWindowTransformer(TransformerMixin, BaseEstimator):
    """Replace each column by its sliding window aggregate along the rows.

    Parameters
    ----------
    op : str
        Gallery name of a single-column numeric operator or representation,
        e.g. "sum", "max", "ewma2", "maxcontig".
    algorithm : str
        Any algorithm accepted by the CLI ``run`` command.
    n : int
        Window length.
    k : int or None
        Window size for the brauer/thurber vector methods.

    NaN inputs are passed as undefined values and undefined outputs come
    back as NaN, so "sum_na", "summissing" and "coalesce" handle gaps.
    """

    def __init__(self, op="sum_float", algorithm="dew1", n=3, k=None):
        self.op = op
        self.algorithm = algorithm
        self.n = n
        self.k = k

    def _entry(self):
        entry = gallery.get(self.op)
        if entry.columns != 1 or entry.column_types != ("num",) or entry.prepare is not None:
            raise ValueError(f"{self.op!r} does not take one numeric column")
        try:
            check_compatible(self.algorithm, entry)
        except CliError as exc:
            raise ValueError(str(exc)) from None
        return entry

    @staticmethod
    def _as_2d(X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2:
            raise ValueError(f"expected a 2-d array, got {X.ndim} dimensions")
        return X

    def fit(self, X, y=None):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError("n must be a positive integer")
        self._entry()
        self.n_features_in_ = self._as_2d(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = self._as_2d(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        entry = self._entry()
        out = np.empty_like(X)
        for j in range(X.shape[1]):
            col = [UNDEF if math.isnan(v) else v for v in X[:, j].tolist()]
            try:
                ys = run_algorithm(self.algorithm, entry, col, int(self.n), self.k)
            except TypeError:
                if any(v is UNDEF for v in col):
                    raise ValueError(f"{self.op!r} does not accept missing values") from None
                raise
            out[:, j] = [math.nan if y is UNDEF else float(y) for y in ys]
        return out
