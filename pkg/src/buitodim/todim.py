"""Generalized TODIM ranking over BUI assessments.

Pipeline: orient cost criteria, compute per-criterion gain/loss dominance
between every pair of alternatives, aggregate across criteria and then across
opponents, min-max normalize, and order the normalized BUI scores by
possibility degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .aggregation import WeightedMean, certainty_transform, check_weights, normalize_weights
from .bui import Bui, ExtendedBui, bui_sub
from .errors import ValidationError
from .possibility import INDIFFERENCE_BAND, PossibilityRanking, bui_possibility, rank_by_possibility

PROFILES = ("paper", "consistent")
DIRECTIONS = ("benefit", "cost")
SPREAD_TOL = 1e-12

GAIN, ZERO, LOSS = "gain", "zero", "loss"


@dataclass(frozen=True)
class TodimParams:
    """Curvature ``alpha``, weight exponent ``beta``, loss divisor ``theta``.

    ``profile="paper"`` weighs losses by ``w**-beta``; ``"consistent"`` uses
    ``w**beta`` so every value and weight transform is nondecreasing.
    """

    alpha: float = 1.0
    beta: float = 1.0
    theta: float = 1.0
    profile: str = "paper"

    def __post_init__(self):
        for name in ("alpha", "beta", "theta"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValidationError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.alpha <= 0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha}")
        if self.beta <= 0:
            raise ValidationError(f"beta must be > 0, got {self.beta}")
        if self.theta < 1:
            raise ValidationError(f"theta must be >= 1, got {self.theta}")
        if self.profile not in PROFILES:
            raise ValidationError(f"profile must be one of {PROFILES}, got {self.profile!r}")


@dataclass(frozen=True)
class ValueFunctions:
    """Gain/loss magnitude transforms ``f1``/``f2`` and weight transforms ``g1``/``g2``."""

    f1: Callable[[float], float]
    f2: Callable[[float], float]
    g1: Callable[[float], float]
    g2: Callable[[float], float]

    @classmethod
    def power(cls, params: TodimParams) -> ValueFunctions:
        a, b = params.alpha, params.beta

        def f(d: float) -> float:
            return d**a

        def g_up(w: float) -> float:
            return w**b

        def g_down(w: float) -> float:
            return math.inf if w == 0.0 else w ** (-b)

        return cls(f1=f, f2=f, g1=g_up, g2=g_down if params.profile == "paper" else g_up)


@dataclass(frozen=True)
class DecisionMatrix:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    assessments: tuple[tuple[Bui, ...], ...]
    weights: tuple[float, ...]
    directions: tuple[str, ...] = ()

    def __post_init__(self):
        alts = tuple(str(a) for a in self.alternatives)
        crit = tuple(str(c) for c in self.criteria)
        n, m = len(alts), len(crit)
        if n < 1 or m < 1:
            raise ValidationError("need at least one alternative and one criterion")
        if len(set(alts)) != n:
            raise ValidationError("alternative labels must be unique")
        if len(set(crit)) != m:
            raise ValidationError("criterion names must be unique")
        rows = tuple(tuple(r) for r in self.assessments)
        if len(rows) != n:
            raise ValidationError(f"expected {n} assessment rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValidationError(f"row {alts[i]}: expected {m} cells, got {len(row)}")
            for k, z in enumerate(row):
                if not isinstance(z, Bui):
                    raise ValidationError(f"cell ({alts[i]}, {crit[k]}) is not a Bui: {z!r}")
        if len(self.weights) != m:
            raise ValidationError(f"expected {m} weights, got {len(self.weights)}")
        directions = tuple(self.directions) or ("benefit",) * m
        if len(directions) != m:
            raise ValidationError(f"expected {m} directions, got {len(directions)}")
        for k, d in enumerate(directions):
            if d not in DIRECTIONS:
                raise ValidationError(f"criterion {crit[k]}: direction must be benefit or cost, got {d!r}")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "criteria", crit)
        object.__setattr__(self, "assessments", rows)
        object.__setattr__(self, "weights", check_weights(self.weights))
        object.__setattr__(self, "directions", directions)

    @classmethod
    def from_array(cls, values, weights=None, alternatives=None, criteria=None, directions=None) -> DecisionMatrix:
        """Build from an ``(n, m, 2)`` array of ``(datum, certainty)`` pairs."""
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 2:
            raise ValidationError(f"expected an (n, m, 2) array, got shape {arr.shape}")
        n, m, _ = arr.shape
        rows = []
        for i in range(n):
            row = []
            for k in range(m):
                try:
                    row.append(Bui(arr[i, k, 0], arr[i, k, 1]))
                except ValidationError as exc:
                    raise ValidationError(f"cell ({i}, {k}): {exc}") from None
            rows.append(tuple(row))
        return cls(
            alternatives=tuple(alternatives) if alternatives is not None else tuple(f"A{i + 1}" for i in range(n)),
            criteria=tuple(criteria) if criteria is not None else tuple(f"C{k + 1}" for k in range(m)),
            assessments=tuple(rows),
            weights=tuple(weights) if weights is not None else (1.0 / m,) * m,
            directions=tuple(directions) if directions is not None else (),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.alternatives), len(self.criteria)

    def to_array(self) -> np.ndarray:
        return np.array([[(z.x, z.c) for z in row] for row in self.assessments], dtype=float)

    def benefit_oriented(self) -> DecisionMatrix:
        """Cost criteria become benefit criteria via ``x -> 1 - x``."""
        if all(d == "benefit" for d in self.directions):
            return self
        rows = tuple(
            tuple(Bui(1.0 - z.x, z.c) if d == "cost" else z for z, d in zip(row, self.directions))
            for row in self.assessments
        )
        return DecisionMatrix(self.alternatives, self.criteria, rows, self.weights, ("benefit",) * len(self.criteria))


@dataclass
class Diagnostics:
    """Events noticed while ranking. Filled in place by the engine."""

    clipped: list[dict] = field(default_factory=list)
    degenerate: list[dict] = field(default_factory=list)
    degenerate_spread: bool = False
    ties: list[tuple[str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "clipped": self.clipped,
            "degenerate": self.degenerate,
            "degenerate_spread": self.degenerate_spread,
            "ties": [list(t) for t in self.ties],
            "notes": list(self.notes),
        }


def relative_weights(weights: Sequence[float]) -> tuple[tuple[float, ...], int]:
    """Weights relative to the heaviest criterion, renormalized.

    Returns the vector and the reference index. The result equals the input
    for any normalized vector; that identity is checked here.
    """
    w = check_weights(weights)
    r = max(range(len(w)), key=lambda k: (w[k], -k))
    ratios = [v / w[r] for v in w]
    total = sum(ratios)
    rel = tuple(v / total for v in ratios)
    if any(abs(a - b) > 1e-12 for a, b in zip(rel, w)):
        raise AssertionError(f"relative weights {rel} drifted from {w}")
    return rel, r


def classify_pair(zi: Bui, zj: Bui) -> str:
    p = bui_possibility(zi, zj)
    if p > 0.5 + INDIFFERENCE_BAND:
        return GAIN
    if p < 0.5 - INDIFFERENCE_BAND:
        return LOSS
    return ZERO


def criterion_dominance(
    zi: Bui,
    zj: Bui,
    w_k: float,
    vf: ValueFunctions,
    params: TodimParams,
    events: list | None = None,
) -> ExtendedBui:
    """Signed dominance of ``zi`` over ``zj`` on one criterion.

    Gain or loss is decided by the possibility degree; the BUI difference
    (larger minus smaller) supplies the magnitude and the certainty.
    """
    kind = classify_pair(zi, zj)
    if kind == ZERO:
        return ExtendedBui(0.0, abs(zi.c + zj.c - 1.0))
    chi = bui_sub(zi, zj) if kind == GAIN else bui_sub(zj, zi)
    if chi.degenerate and events is not None:
        events.append({"kind": "degenerate", "chi": str(chi)})
    d = chi.magnitude
    if d > 1.0:
        if events is not None:
            events.append({"kind": "clipped", "magnitude": d})
        d = 1.0
    if kind == GAIN:
        value = vf.g1(w_k) * vf.f1(d)
    else:
        value = -vf.g2(w_k) * vf.f2(d) / params.theta
    if not math.isfinite(value):
        # w**-beta at w = 0 with a nonzero loss; no finite dominance exists
        raise ValidationError(f"loss term is not finite for weight {w_k}")
    return ExtendedBui(value, chi.c, chi.degenerate)


def _pair_from_rows(row_i, row_j, weights, vf, params, events=None) -> ExtendedBui:
    terms = [criterion_dominance(zi, zj, w, vf, params, events) for zi, zj, w in zip(row_i, row_j, weights)]
    datum = 0.0
    for t in terms:
        datum += t.x
    base = WeightedMean(normalize_weights([vf.g1(w) for w in weights]))
    certainty = certainty_transform(base, [Bui(min(abs(t.x), 1.0), t.c) for t in terms])
    return ExtendedBui(datum, certainty, any(t.degenerate for t in terms))


def pair_dominance(
    i: int,
    j: int,
    matrix: DecisionMatrix,
    vf: ValueFunctions | None = None,
    params: TodimParams | None = None,
) -> ExtendedBui:
    """Dominance of alternative ``i`` over ``j`` summed over criteria."""
    params = params or TodimParams()
    vf = vf or ValueFunctions.power(params)
    n = len(matrix.alternatives)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"alternative index out of range: ({i}, {j}) for n={n}")
    if i == j:
        return ExtendedBui(0.0, 1.0)
    oriented = matrix.benefit_oriented()
    weights, _ = relative_weights(oriented.weights)
    return _pair_from_rows(oriented.assessments[i], oriented.assessments[j], weights, vf, params)


def dominance_matrix(
    matrix: DecisionMatrix,
    vf: ValueFunctions | None = None,
    params: TodimParams | None = None,
    diagnostics: Diagnostics | None = None,
) -> list[list[ExtendedBui]]:
    params = params or TodimParams()
    vf = vf or ValueFunctions.power(params)
    oriented = matrix.benefit_oriented()
    weights, _ = relative_weights(oriented.weights)
    rows = oriented.assessments
    n = len(rows)
    out = []
    for i in range(n):
        out_row = []
        for j in range(n):
            if i == j:
                out_row.append(ExtendedBui(0.0, 1.0))
                continue
            events: list = []
            out_row.append(_pair_from_rows(rows[i], rows[j], weights, vf, params, events))
            if diagnostics is not None:
                for e in events:
                    e.update(row=oriented.alternatives[i], column=oriented.alternatives[j])
                    target = diagnostics.clipped if e["kind"] == "clipped" else diagnostics.degenerate
                    target.append(e)
        out.append(out_row)
    return out


def overall_performance(i: int, dominance: Sequence[Sequence[ExtendedBui]]) -> ExtendedBui:
    """Sum of row ``i``; certainty from the plain-mean lift over the row."""
    row = dominance[i]
    datum = 0.0
    for d in row:
        datum += d.x
    base = WeightedMean.uniform(len(row))
    certainty = certainty_transform(base, [Bui(min(max(d.x, 0.0), 1.0), d.c) for d in row])
    return ExtendedBui(datum, certainty, any(d.degenerate for d in row))


def normalize(performances: Sequence[ExtendedBui]) -> tuple[list[Bui], bool]:
    """Min-max the data; certainties pass through.

    Returns the normalized values and whether the spread was degenerate
    (every datum then becomes 0.5).
    """
    if len(performances) == 0:
        raise ValidationError("cannot normalize an empty list")
    data = [p.x for p in performances]
    lo, hi = min(data), max(data)
    spread = hi - lo
    if spread <= SPREAD_TOL:
        return [Bui(0.5, p.c) for p in performances], True
    return [Bui(min(max((p.x - lo) / spread, 0.0), 1.0), p.c) for p in performances], False


@dataclass
class RankingReport:
    alternatives: list[str]
    performances: list[ExtendedBui]
    normalized: list[Bui]
    possibility: PossibilityRanking
    order: list[str]
    params: TodimParams
    reference_criterion: str
    diagnostics: Diagnostics

    @property
    def scores(self) -> dict[str, float]:
        return self.possibility.scores

    def to_dict(self, decimals: int = 6) -> dict:
        def r(v: float) -> float:
            return round(float(v), decimals)

        return {
            "order": list(self.order),
            "alternatives": [
                {
                    "label": a,
                    "performance": {"x": r(p.x), "c": r(p.c)},
                    "normalized": {"x": r(z.x), "c": r(z.c)},
                    "score": r(self.possibility.scores[a]),
                }
                for a, p, z in zip(self.alternatives, self.performances, self.normalized)
            ],
            "possibility": self.possibility.to_dict(decimals),
            "params": {
                "alpha": self.params.alpha,
                "beta": self.params.beta,
                "theta": self.params.theta,
                "profile": self.params.profile,
            },
            "reference_criterion": self.reference_criterion,
            "diagnostics": self.diagnostics.to_dict(),
        }


def rank(
    matrix: DecisionMatrix,
    vf: ValueFunctions | None = None,
    params: TodimParams | None = None,
) -> RankingReport:
    params = params or TodimParams()
    vf = vf or ValueFunctions.power(params)
    diagnostics = Diagnostics()
    oriented = matrix.benefit_oriented()
    _, r = relative_weights(oriented.weights)
    dom = dominance_matrix(oriented, vf, params, diagnostics)
    perf = [overall_performance(i, dom) for i in range(len(dom))]
    xi, flat = normalize(perf)
    diagnostics.degenerate_spread = flat
    ranking = rank_by_possibility(list(zip(oriented.alternatives, xi)))
    diagnostics.ties = list(ranking.ties)
    return RankingReport(
        alternatives=list(oriented.alternatives),
        performances=perf,
        normalized=xi,
        possibility=ranking,
        order=list(ranking.order),
        params=params,
        reference_criterion=oriented.criteria[r],
        diagnostics=diagnostics,
    )
