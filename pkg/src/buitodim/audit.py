"""Metamorphic checks of weight consistency and weight monotonicity.

Weight consistency (WC): splitting one criterion's weight across two identical
copies of that criterion must leave the final order unchanged.

Weight monotonicity (WM): take two alternatives that differ only on one
criterion, where the first outranks the second. Raising that criterion's
weight (the others shrink proportionally) must not drop the first alternative
below the second.

Both checks are also evaluated on the overall performance data before they
are normalized and ordered by possibility degree; those counts are reported
separately under ``performance_level``.

Each trial draws its instance from its own seed, so any violation can be
replayed in isolation with :func:`replay_trial`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bui import Bui
from .possibility import bui_possibility
from .todim import DecisionMatrix, TodimParams, ValueFunctions, rank

MAX_ALTERNATIVES = 6
MAX_CRITERIA = 5
# keep weights away from 0 so w**-beta stays finite under profile="paper"
MIN_WEIGHT = 1e-3
DATUM_TOL = 1e-9


@dataclass(frozen=True)
class AuditConfig:
    max_alternatives: int = MAX_ALTERNATIVES
    max_criteria: int = MAX_CRITERIA
    min_weight: float = MIN_WEIGHT


@dataclass
class AuditReport:
    trials: int
    seed: int
    params: TodimParams
    wc_violations: list[dict] = field(default_factory=list)
    wm_violations: list[dict] = field(default_factory=list)

    @property
    def wc_count(self) -> int:
        """Trials whose final order changed after the weight split."""
        return sum(v["order_violated"] for v in self.wc_violations)

    @property
    def wm_count(self) -> int:
        """Trials where the better alternative fell behind in the final order."""
        return sum(v["order_violated"] for v in self.wm_violations)

    @property
    def wc_performance_count(self) -> int:
        """Same check on the order of overall performance data alone."""
        return sum(v["performance_violated"] for v in self.wc_violations)

    @property
    def wm_performance_count(self) -> int:
        return sum(v["performance_violated"] for v in self.wm_violations)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "params": {
                "alpha": self.params.alpha,
                "beta": self.params.beta,
                "theta": self.params.theta,
                "profile": self.params.profile,
            },
            "wc_violations": self.wc_count,
            "wm_violations": self.wm_count,
            "performance_level": {
                "wc_violations": self.wc_performance_count,
                "wm_violations": self.wm_performance_count,
            },
            "reproducers": {"wc": self.wc_violations, "wm": self.wm_violations},
        }


def _random_bui(rng: np.random.Generator) -> Bui:
    return Bui(rng.uniform(), rng.uniform())


def _random_weights(rng: np.random.Generator, m: int, floor: float) -> np.ndarray:
    w = rng.dirichlet(np.ones(m))
    w = np.maximum(w, floor)
    return w / w.sum()


def _random_matrix(rng: np.random.Generator, n: int, m: int, config: AuditConfig) -> DecisionMatrix:
    rows = [[_random_bui(rng) for _ in range(m)] for _ in range(n)]
    arr = np.array([[(z.x, z.c) for z in row] for row in rows])
    return DecisionMatrix.from_array(arr, weights=_random_weights(rng, m, config.min_weight))


def check_weight_consistency(rng, vf, params, config: AuditConfig) -> dict:
    n = int(rng.integers(2, config.max_alternatives + 1))
    m = int(rng.integers(1, config.max_criteria + 1))
    base = _random_matrix(rng, n, m, config)
    k = int(rng.integers(m))
    share = rng.uniform(0.05, 0.95)

    arr = base.to_array()
    split = np.concatenate([arr, arr[:, k : k + 1, :]], axis=1)
    w = np.array(base.weights)
    w_split = np.append(w, w[k] * (1.0 - share))
    w_split[k] = w[k] * share
    dup = DecisionMatrix.from_array(split, weights=w_split / w_split.sum(), alternatives=base.alternatives)

    rep_before = rank(base, vf, params)
    rep_after = rank(dup, vf, params)
    return {
        "n": n,
        "m": m,
        "criterion": k,
        "share": share,
        "before": rep_before.order,
        "after": rep_after.order,
        "order_violated": rep_before.order != rep_after.order,
        "performance_violated": _datum_order(rep_before) != _datum_order(rep_after),
    }


def check_weight_monotonicity(rng, vf, params, config: AuditConfig) -> dict:
    n = int(rng.integers(2, config.max_alternatives + 1))
    m = int(rng.integers(1, config.max_criteria + 1))
    base = _random_matrix(rng, n, m, config)
    i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
    k = int(rng.integers(m))

    arr = base.to_array()
    arr[j] = arr[i]
    better, worse = Bui(*arr[i, k]), _random_bui(rng)
    p = bui_possibility(better, worse)
    while abs(p - 0.5) <= 1e-9:
        worse = _random_bui(rng)
        p = bui_possibility(better, worse)
    if p < 0.5:
        better, worse = worse, better
    arr[i, k] = (better.x, better.c)
    arr[j, k] = (worse.x, worse.c)

    w = np.array(base.weights)
    w_new = w.copy()
    if w[k] < 1.0:
        raised = w[k] + rng.uniform(0.05, 0.95) * (1.0 - w[k])
        w_new *= (1.0 - raised) / (1.0 - w[k])
        w_new[k] = raised
        w_new /= w_new.sum()

    rep_before = rank(DecisionMatrix.from_array(arr, weights=w, alternatives=base.alternatives), vf, params)
    rep_after = rank(DecisionMatrix.from_array(arr, weights=w_new, alternatives=base.alternatives), vf, params)
    a_i, a_j = base.alternatives[i], base.alternatives[j]
    ahead_before = rep_before.order.index(a_i) < rep_before.order.index(a_j)
    ahead_after = rep_after.order.index(a_i) < rep_after.order.index(a_j)
    gap_before = rep_before.performances[i].x - rep_before.performances[j].x
    gap_after = rep_after.performances[i].x - rep_after.performances[j].x
    return {
        "n": n,
        "m": m,
        "better": a_i,
        "worse": a_j,
        "criterion": k,
        "weights_before": w.tolist(),
        "weights_after": w_new.tolist(),
        "before": rep_before.order,
        "after": rep_after.order,
        "performance_gap_before": gap_before,
        "performance_gap_after": gap_after,
        "order_violated": ahead_before and not ahead_after,
        "performance_violated": gap_before > DATUM_TOL and gap_after <= DATUM_TOL,
    }


def _datum_order(report) -> list[str]:
    data = [p.x for p in report.performances]
    # round away accumulation noise so equal sums compare equal
    keyed = sorted(range(len(data)), key=lambda i: (-round(data[i] / DATUM_TOL), i))
    return [report.alternatives[i] for i in keyed]


def replay_trial(
    trial_seed: int,
    vf: ValueFunctions | None = None,
    params: TodimParams | None = None,
    config: AuditConfig | None = None,
) -> tuple[dict, dict]:
    """Rerun one trial and return its (WC, WM) records."""
    params = params or TodimParams()
    vf = vf or ValueFunctions.power(params)
    config = config or AuditConfig()
    rng = np.random.default_rng(trial_seed)
    wc = check_weight_consistency(rng, vf, params, config)
    wm = check_weight_monotonicity(rng, vf, params, config)
    return wc, wm


def audit_weight_properties(
    config: AuditConfig | None = None,
    vf: ValueFunctions | None = None,
    params: TodimParams | None = None,
    trials: int = 1000,
    seed: int = 0,
) -> AuditReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    params = params or TodimParams()
    vf = vf or ValueFunctions.power(params)
    config = config or AuditConfig()
    trial_seeds = np.random.default_rng(seed).integers(0, 2**32, size=trials)
    report = AuditReport(trials=trials, seed=seed, params=params)
    for t, trial_seed in enumerate(trial_seeds):
        wc, wm = replay_trial(int(trial_seed), vf, params, config)
        for record, sink in ((wc, report.wc_violations), (wm, report.wm_violations)):
            if record["order_violated"] or record["performance_violated"]:
                sink.append({"trial": t, "seed": int(trial_seed), **record})
    return report
