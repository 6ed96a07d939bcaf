"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .audit import AuditConfig, audit_weight_properties
from .bui import parse_bui
from .errors import ParseError, ValidationError
from .io import aggregate_group, document_to_dict, parse_problem
from .possibility import bui_possibility
from .todim import PROFILES, TodimParams, dominance_matrix, rank

EXIT_OK, EXIT_PARSE, EXIT_VALIDATE, EXIT_INTERNAL = 0, 2, 3, 4


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated numbers, got {text!r}") from None


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--profile", choices=PROFILES)


def _load(args):
    weights = _float_list(args.weights) if getattr(args, "weights", None) else None
    doc = parse_problem(args.problem, weights=weights)
    overrides = {k: getattr(args, k) for k in ("alpha", "beta", "theta", "profile") if getattr(args, k, None) is not None}
    params = TodimParams(**{**doc.params.__dict__, **overrides}) if overrides else doc.params
    return replace(doc, params=params)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _render_table(report) -> str:
    lines = [f"{'alternative':<12} {'performance':>22} {'normalized':>22} {'score':>10}"]
    for a, p, z in zip(report.alternatives, report.performances, report.normalized):
        lines.append(f"{a:<12} {str(p):>22} {str(z):>22} {report.scores[a]:>10.6f}")
    lines.append("")
    lines.append("order: " + " > ".join(report.order))
    notes = report.diagnostics.notes
    if report.diagnostics.degenerate_spread:
        notes = notes + ["overall performances are all equal; every normalized datum set to 0.5"]
    if report.diagnostics.ties:
        notes = notes + ["tie broken: " + ", ".join(f"{a}/{b}" for a, b in report.diagnostics.ties)]
    lines.extend(f"note: {n}" for n in notes)
    return "\n".join(lines)


def cmd_rank(args) -> int:
    doc = _load(args)
    report = rank(doc.matrix, params=doc.params)
    if args.format == "table":
        print(_render_table(report))
    else:
        _emit(report.to_dict())
    return EXIT_OK


def cmd_pairwise(args) -> int:
    doc = _load(args)
    dom = dominance_matrix(doc.matrix, params=doc.params)
    _emit(
        {
            "labels": list(doc.matrix.alternatives),
            "matrix": [[{"x": round(d.x, 6), "c": round(d.c, 6)} for d in row] for row in dom],
        }
    )
    return EXIT_OK


def cmd_possdeg(args) -> int:
    print(f"{bui_possibility(parse_bui(args.a), parse_bui(args.b)):.6f}")
    return EXIT_OK


def cmd_aggregate(args) -> int:
    weights = _float_list(args.weights) if args.weights else None
    docs = [parse_problem(p, weights=weights) for p in args.problems]
    dm_weights = _float_list(args.dm_weights) if args.dm_weights else None
    _emit(document_to_dict(aggregate_group(docs, dm_weights)))
    return EXIT_OK


def cmd_audit(args) -> int:
    params = TodimParams(alpha=args.alpha or 1.0, beta=args.beta or 1.0, theta=args.theta or 1.0, profile=args.profile or "paper")
    report = audit_weight_properties(AuditConfig(), params=params, trials=args.trials, seed=args.seed)
    _emit(report.to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="buitodim", description="BUI arithmetic and generalized TODIM ranking")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank the alternatives of a problem document")
    p.add_argument("problem")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--weights", help="criterion weights for CSV input, comma separated")
    _add_param_flags(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("pairwise", help="print the pairwise dominance matrix")
    p.add_argument("problem")
    p.add_argument("--weights")
    _add_param_flags(p)
    p.set_defaults(func=cmd_pairwise)

    p = sub.add_parser("possdeg", help="possibility degree P(A >= B) of two BUI values")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_possdeg)

    p = sub.add_parser("aggregate", help="merge decision makers' matrices")
    p.add_argument("problems", nargs="+")
    p.add_argument("--dm-weights")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("audit", help="weight consistency / monotonicity audit")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_param_flags(p)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
