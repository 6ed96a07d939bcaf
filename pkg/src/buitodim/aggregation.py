"""Aggregation functions on [0, 1]^m and their lift to BUI inputs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bui import Bui
from .errors import ValidationError

WEIGHT_SUM_TOL = 1e-9


def check_weights(weights: Sequence[float], tol: float = WEIGHT_SUM_TOL) -> tuple[float, ...]:
    """Validate a weight vector: nonnegative, finite, summing to one."""
    w = tuple(float(v) for v in weights)
    if not w:
        raise ValidationError("weight vector is empty")
    for k, v in enumerate(w):
        if not math.isfinite(v) or v < 0.0:
            raise ValidationError(f"weight {k} must be a nonnegative number, got {v!r}")
    total = math.fsum(w)
    if abs(total - 1.0) > tol:
        raise ValidationError(f"weights must sum to 1, got {total:.12g}")
    return w


def normalize_weights(values: Sequence[float]) -> tuple[float, ...]:
    """Rescale nonnegative values so they sum to one."""
    vals = [float(v) for v in values]
    if any(not math.isfinite(v) or v < 0.0 for v in vals):
        raise ValidationError(f"cannot normalize weights {vals!r}")
    total = sum(vals)
    if total <= 0.0:
        raise ValidationError("cannot normalize weights that sum to zero")
    return tuple(v / total for v in vals)


@dataclass(frozen=True)
class WeightedMean:
    """Weighted arithmetic mean; the plain mean is the equal-weight case.

    Any replacement base must keep the same contract: ``arity`` inputs in
    [0, 1], nondecreasing in each, mapping all-zeros to 0 and all-ones to 1.
    """

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", check_weights(self.weights))

    @classmethod
    def uniform(cls, m: int) -> WeightedMean:
        if m < 1:
            raise ValidationError("arity must be at least 1")
        return cls((1.0 / m,) * m)

    @property
    def arity(self) -> int:
        return len(self.weights)

    def __call__(self, xs: Sequence[float]) -> float:
        return base_apply(self, xs)


def _check_arity(agg: WeightedMean, n: int) -> None:
    if n != agg.arity:
        raise ValidationError(f"expected {agg.arity} inputs, got {n}")


def base_apply(agg: WeightedMean, xs: Sequence[float]) -> float:
    _check_arity(agg, len(xs))
    total = 0.0
    for w, x in zip(agg.weights, xs):
        total += w * float(x)
    # rounding can push a mean of values in [0, 1] a hair outside
    return min(max(total, 0.0), 1.0)


def certainty_transform(agg: WeightedMean, pairs: Sequence[Bui]) -> float:
    """Output certainty of the lifted aggregation.

    ``1 - A(1 - c + c*x) + A(c*x)``: one minus the aggregated upper interval
    bounds plus the aggregated lower bounds.
    """
    _check_arity(agg, len(pairs))
    upper = base_apply(agg, [1.0 - p.c + p.c * p.x for p in pairs])
    lower = base_apply(agg, [p.c * p.x for p in pairs])
    return min(max(1.0 - upper + lower, 0.0), 1.0)


def bui_lift(agg: WeightedMean, pairs: Sequence[Bui]) -> Bui:
    """Aggregate data with ``agg`` and certainties with the lifted transform."""
    _check_arity(agg, len(pairs))
    return Bui(base_apply(agg, [p.x for p in pairs]), certainty_transform(agg, pairs))


def arithmetic_bui_mean(pairs: Sequence[Bui]) -> Bui:
    if len(pairs) == 0:
        raise ValidationError("cannot average an empty list")
    return bui_lift(WeightedMean.uniform(len(pairs)), pairs)


def weighted_bui_mean(pairs: Sequence[Bui], weights: Sequence[float]) -> Bui:
    return bui_lift(WeightedMean(tuple(weights)), pairs)

