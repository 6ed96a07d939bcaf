"""scikit-learn style wrapper around the BUI-TODIM ranking."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .aggregation import check_weights
from .bui import Bui
from .errors import ValidationError
from .todim import DecisionMatrix, TodimParams, rank, relative_weights


def check_bui_array(X) -> np.ndarray:
    """Coerce ``X`` to a float array of shape ``(n_alternatives, n_criteria, 2)``.

    Accepts nested sequences of ``Bui`` objects or of ``(datum, certainty)``
    pairs. Every component must lie in [0, 1].
    """
    if isinstance(X, DecisionMatrix):
        return X.to_array()
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], (list, tuple)) and X[0] and isinstance(X[0][0], Bui):
        X = [[(z.x, z.c) for z in row] for row in X]
    try:
        arr = np.asarray(X, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"cannot read BUI array: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValidationError(f"expected shape (n_alternatives, n_criteria, 2), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"need at least one alternative and one criterion, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("BUI array contains non-finite values")
    bad = np.argwhere((arr < 0.0) | (arr > 1.0))
    if len(bad):
        i, k, part = bad[0]
        name = "datum" if part == 0 else "certainty"
        raise ValidationError(f"cell ({i}, {k}) {name} must lie in [0, 1], got {arr[i, k, part]}")
    return arr


class BuiTodim(TransformerMixin, BaseEstimator):
    """Rank alternatives assessed with BUI values.

    ``fit`` ranks the alternatives in ``X`` and stores the result;
    ``transform`` maps a set of alternatives to their normalized overall
    performance ``(datum, certainty)``; ``predict`` gives 0-based rank
    positions (0 is best).

    TODIM scores are relative to the compared set, so ``transform`` and
    ``predict`` evaluate the alternatives in the ``X`` they are given
    against each other, with the fitted weights and parameters.

    Parameters
    ----------
    weights : array-like of shape (n_criteria,), default=None
        Criterion weights summing to 1. Uniform when omitted.
    directions : sequence of {"benefit", "cost"}, default=None
        Per-criterion direction. All benefit when omitted.
    alpha, beta, theta : float
        Value-function curvature, weight exponent and loss divisor.
    profile : {"paper", "consistent"}
        Loss weighting; see :class:`~buitodim.todim.TodimParams`.
    """

    def __init__(self, weights=None, directions=None, alpha=1.0, beta=1.0, theta=1.0, profile="paper"):
        self.weights = weights
        self.directions = directions
        self.alpha = alpha
        self.beta = beta
        self.theta = theta
        self.profile = profile

    def _matrix(self, arr: np.ndarray, labels=None) -> DecisionMatrix:
        return DecisionMatrix.from_array(
            arr,
            weights=self.weights_,
            alternatives=labels,
            directions=self.directions,
        )

    def fit(self, X, y=None, labels=None):
        arr = check_bui_array(X)
        m = arr.shape[1]
        self.params_ = TodimParams(self.alpha, self.beta, self.theta, self.profile)
        weights = [1.0 / m] * m if self.weights is None else check_weights(self.weights)
        if len(weights) != m:
            raise ValidationError(f"X has {m} criteria but {len(weights)} weights were given")
        self.weights_, self.reference_criterion_ = relative_weights(weights)
        self.n_features_in_ = m

        self.report_ = rank(self._matrix(arr, labels), params=self.params_)
        self.performance_ = np.array([(p.x, p.c) for p in self.report_.performances])
        self.normalized_ = np.array([(z.x, z.c) for z in self.report_.normalized])
        self.scores_ = np.array([self.report_.scores[a] for a in self.report_.alternatives])
        self.order_ = np.array([self.report_.alternatives.index(a) for a in self.report_.order])
        return self

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y, **fit_params).normalized_.copy()

    def _evaluate(self, X):
        check_is_fitted(self, "report_")
        arr = check_bui_array(X)
        if arr.shape[1] != self.n_features_in_:
            raise ValidationError(f"X has {arr.shape[1]} criteria, expected {self.n_features_in_}")
        return rank(self._matrix(arr), params=self.params_)

    def transform(self, X):
        report = self._evaluate(X)
        return np.array([(z.x, z.c) for z in report.normalized])

    def predict(self, X):
        report = self._evaluate(X)
        positions = np.empty(len(report.alternatives), dtype=int)
        for pos, label in enumerate(report.order):
            positions[report.alternatives.index(label)] = pos
        return positions
