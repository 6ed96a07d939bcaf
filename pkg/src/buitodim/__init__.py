"""Basic uncertain information (BUI) arithmetic, possibility ordering and
generalized TODIM ranking."""

from .aggregation import (
    WeightedMean,
    arithmetic_bui_mean,
    base_apply,
    bui_lift,
    certainty_transform,
    check_weights,
)
from .audit import AuditReport, audit_weight_properties, replay_trial
from .bui import (
    Bui,
    ExtendedBui,
    Interval,
    UnitInterval,
    bui_add,
    bui_sub,
    clamp_to_bui,
    format_bui,
    from_interval,
    parse_bui,
    strictly_greater,
    to_interval,
)
from .errors import ParseError, ValidationError
from .io import ProblemDocument, aggregate_group, parse_problem
from .possibility import Outrank, bui_possibility, interval_possibility, outrank, rank_by_possibility
from .todim import (
    DecisionMatrix,
    RankingReport,
    TodimParams,
    ValueFunctions,
    criterion_dominance,
    dominance_matrix,
    normalize,
    overall_performance,
    pair_dominance,
    rank,
    relative_weights,
)

__version__ = "0.1.0"


def __getattr__(name):
    # scikit-learn is slow to import; only pay for it when the estimator is used
    if name in ("BuiTodim", "check_bui_array"):
        from . import estimator

        return getattr(estimator, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
