"""Possibility degrees of intervals and BUI values, and ranking by them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bui import Bui, Interval, to_interval
from .errors import ValidationError

INDIFFERENCE_BAND = 1e-12
SCORE_TIE_TOL = 1e-9


def interval_possibility(a: Interval, b: Interval) -> float:
    """Degree to which interval ``a`` is at least as large as interval ``b``.

    ``1 - (b.upper - a.lower) / (width(a) + width(b))`` clipped into [0, 1].
    Two points compare as 1, 0 or 0.5.
    """
    denom = (b.upper - b.lower) + (a.upper - a.lower)
    if denom <= 0.0:
        if a.lower > b.lower:
            return 1.0
        if a.lower < b.lower:
            return 0.0
        return 0.5
    return max(1.0 - max((b.upper - a.lower) / denom, 0.0), 0.0)


def bui_possibility(a: Bui, b: Bui) -> float:
    return interval_possibility(to_interval(a), to_interval(b))


class Outrank(enum.Enum):
    SUCCEEDS = "succeeds"
    INDIFFERENT = "indifferent"
    PRECEDES = "precedes"


def classify(p: float, band: float = INDIFFERENCE_BAND) -> Outrank:
    if p > 0.5 + band:
        return Outrank.SUCCEEDS
    if p < 0.5 - band:
        return Outrank.PRECEDES
    return Outrank.INDIFFERENT


def outrank(a: Bui, b: Bui) -> Outrank:
    return classify(bui_possibility(a, b))


def possibility_matrix(items: Sequence[Bui]) -> np.ndarray:
    """Pairwise ``P(items[i] >= items[j])``.

    Only the upper triangle is evaluated; the lower one is filled as its
    complement so rows and columns stay exactly complementary.
    """
    n = len(items)
    intervals = [to_interval(a) for a in items]
    p = np.full((n, n), 0.5)
    for i in range(n):
        for j in range(i + 1, n):
            p[i, j] = interval_possibility(intervals[i], intervals[j])
            p[j, i] = 1.0 - p[i, j]
    return p


@dataclass(frozen=True)
class PossibilityRanking:
    order: list[str]
    scores: dict[str, float]
    labels: list[str]
    matrix: np.ndarray
    ties: list[tuple[str, str]]

    def to_dict(self, decimals: int = 6) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [[round(float(v), decimals) for v in row] for row in self.matrix],
            "scores": {k: round(v, decimals) for k, v in self.scores.items()},
            "order": list(self.order),
        }


def rank_by_possibility(scores: Sequence[tuple[str, Bui]]) -> PossibilityRanking:
    """Order labelled BUI scores by pairwise possibility.

    The order is a linear extension of the strict outranking relation
    ``P(a >= b) > 0.5`` whenever that relation is acyclic. Among items not
    forced by it, the larger possibility row sum ``sum_j P(a >= item_j)``
    goes first; sums within ``SCORE_TIE_TOL`` are tied and resolved by
    higher certainty, then input position. Each such resolution is
    reported in ``ties``. If the relation has a cycle, the cycle's members
    are taken by the same row-sum rule.
    """
    if not scores:
        raise ValidationError("empty ranking")
    labels = [label for label, _ in scores]
    if len(set(labels)) != len(labels):
        raise ValidationError("ranking labels must be unique")
    items = [value for _, value in scores]
    n = len(items)
    p = possibility_matrix(items)
    row_sums = [sum(float(v) for v in row) for row in p]

    remaining = list(range(n))
    order_idx: list[int] = []
    ties: list[tuple[str, str]] = []
    while remaining:
        free = [i for i in remaining if not any(p[j, i] > 0.5 + INDIFFERENCE_BAND for j in remaining if j != i)]
        pool = free or remaining
        best = _pick(pool, row_sums, items)
        for other in pool:
            if other != best and abs(row_sums[other] - row_sums[best]) <= SCORE_TIE_TOL:
                ties.append((labels[best], labels[other]))
        order_idx.append(best)
        remaining.remove(best)
    return PossibilityRanking(
        order=[labels[i] for i in order_idx],
        scores={labels[i]: row_sums[i] for i in range(n)},
        labels=labels,
        matrix=p,
        ties=ties,
    )


def _pick(pool: list[int], row_sums: list[float], items: Sequence[Bui]) -> int:
    top = max(row_sums[i] for i in pool)
    tied = [i for i in pool if top - row_sums[i] <= SCORE_TIE_TOL]
    return min(tied, key=lambda i: (-items[i].c, i))
