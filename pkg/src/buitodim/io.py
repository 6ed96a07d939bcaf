"""Reading, validating and writing decision problem documents.

JSON is the canonical format::

    {"alternatives": ["A1", ...],
     "criteria": [{"name": "C1", "weight": 0.2453, "direction": "benefit"}, ...],
     "assessments": [[{"x": 0.337, "c": 0.726}, ...], ...],
     "params": {"alpha": 1, "beta": 1, "theta": 1, "profile": "paper"}}

CSV is accepted for import only: a header row of criterion names after a
leading label column, then one row per alternative with ``<x;c>`` cells.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from .aggregation import check_weights, weighted_bui_mean
from .bui import Bui, parse_bui
from .errors import ParseError, ValidationError
from .todim import DIRECTIONS, DecisionMatrix, TodimParams

DECIMALS = 6
CASE_STUDY = "case_study.json"


@dataclass(frozen=True)
class ProblemDocument:
    matrix: DecisionMatrix
    params: TodimParams = TodimParams()


def bundled_path(name: str = CASE_STUDY) -> Path:
    return Path(str(resources.files("buitodim") / "data" / name))


def resolve_path(source: str | Path) -> Path:
    """Existing paths win; otherwise fall back to a bundled file of that name."""
    path = Path(source)
    if path.exists():
        return path
    candidate = bundled_path(path.name)
    if candidate.exists():
        return candidate
    raise ParseError(f"no such file: {source}")


def parse_problem(source: str | Path, weights: Sequence[float] | None = None) -> ProblemDocument:
    """Load a problem from a path or from literal JSON/CSV text.

    ``weights`` is only consulted for CSV input, which has no weight column.
    """
    text = str(source)
    is_inline = isinstance(source, str) and ("\n" in text or text.lstrip().startswith("{"))
    if is_inline:
        return parse_problem_text(text, weights=weights)
    path = resolve_path(source)
    try:
        content = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    return parse_problem_text(content, fmt=fmt, weights=weights)


def parse_problem_text(text: str, fmt: str | None = None, weights: Sequence[float] | None = None) -> ProblemDocument:
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return document_from_dict(data)
    if fmt == "csv":
        return _parse_csv(text, weights)
    raise ParseError(f"unknown format {fmt!r}")


def _number(value, where: str, errors: list[str]) -> float | None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{where}: expected a number, got {value!r}")
        return None
    if not math.isfinite(value):
        errors.append(f"{where}: expected a finite number, got {value!r}")
        return None
    return float(value)


def document_from_dict(data) -> ProblemDocument:
    """Validate a parsed JSON document. All constraint violations are reported together."""
    if not isinstance(data, dict):
        raise ParseError("problem document must be a JSON object")
    for key in ("alternatives", "criteria", "assessments"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    alternatives, criteria, grid = data["alternatives"], data["criteria"], data["assessments"]
    if not isinstance(alternatives, list) or not isinstance(criteria, list) or not isinstance(grid, list):
        raise ParseError("alternatives, criteria and assessments must be arrays")

    errors: list[str] = []
    names, weights, directions = [], [], []
    for k, crit in enumerate(criteria):
        if not isinstance(crit, dict) or "name" not in crit or "weight" not in crit:
            raise ParseError(f"criteria[{k}] must be an object with name and weight")
        names.append(str(crit["name"]))
        w = _number(crit["weight"], f"criterion {crit['name']} weight", errors)
        if w is not None and w < 0:
            errors.append(f"criterion {crit['name']} weight: must be >= 0, got {w}")
        weights.append(w if w is not None else 0.0)
        direction = crit.get("direction", "benefit")
        if direction not in DIRECTIONS:
            errors.append(f"criterion {crit['name']} direction: must be benefit or cost, got {direction!r}")
        directions.append(direction)
    labels = [str(a) for a in alternatives]

    if len(grid) != len(labels):
        errors.append(f"assessments: expected {len(labels)} rows, got {len(grid)}")
    rows = []
    for i, row in enumerate(grid):
        label = labels[i] if i < len(labels) else f"row {i}"
        if not isinstance(row, list):
            raise ParseError(f"assessments row {label} must be an array")
        if len(row) != len(names):
            errors.append(f"assessments row {label}: expected {len(names)} cells, got {len(row)}")
        cells = []
        for k, cell in enumerate(row):
            crit = names[k] if k < len(names) else f"column {k}"
            where = f"cell ({label}, {crit})"
            if not isinstance(cell, dict) or "x" not in cell or "c" not in cell:
                raise ParseError(f"{where}: expected an object with x and c")
            x = _number(cell["x"], f"{where} x", errors)
            c = _number(cell["c"], f"{where} c", errors)
            for name, v in (("x", x), ("c", c)):
                if v is not None and not 0.0 <= v <= 1.0:
                    errors.append(f"{where} {name}: must lie in [0, 1], got {v}")
            ok = x is not None and c is not None and 0.0 <= x <= 1.0 and 0.0 <= c <= 1.0
            cells.append(Bui(x, c) if ok else None)
        rows.append(cells)
    if weights and not errors:
        try:
            check_weights(weights)
        except ValidationError as exc:
            errors.append(f"criteria weights: {exc}")

    raw_params = data.get("params", {}) or {}
    if not isinstance(raw_params, dict):
        raise ParseError("params must be an object")
    params = None
    try:
        params = TodimParams(
            alpha=raw_params.get("alpha", 1.0),
            beta=raw_params.get("beta", 1.0),
            theta=raw_params.get("theta", 1.0),
            profile=raw_params.get("profile", "paper"),
        )
    except ValidationError as exc:
        errors.append(f"params: {exc}")

    if errors:
        raise ValidationError("; ".join(errors))
    matrix = DecisionMatrix(tuple(labels), tuple(names), tuple(tuple(r) for r in rows), tuple(weights), tuple(directions))
    return ProblemDocument(matrix, params)


def _parse_csv(text: str, weights: Sequence[float] | None) -> ProblemDocument:
    table = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if len(table) < 2 or len(table[0]) < 2:
        raise ParseError("CSV needs a header row and at least one alternative row")
    names = [h.strip() for h in table[0][1:]]
    labels, rows, errors = [], [], []
    for r, raw in enumerate(table[1:], start=1):
        label = raw[0].strip()
        labels.append(label)
        if len(raw) - 1 != len(names):
            errors.append(f"row {label}: expected {len(names)} cells, got {len(raw) - 1}")
            rows.append([])
            continue
        cells = []
        for k, cell in enumerate(raw[1:]):
            try:
                cells.append(parse_bui(cell))
            except ValidationError as exc:
                errors.append(f"cell ({label}, {names[k]}): {exc}")
        rows.append(cells)
    if weights is None:
        weights = [1.0 / len(names)] * len(names)
    elif len(weights) != len(names):
        errors.append(f"expected {len(names)} weights, got {len(weights)}")
    if errors:
        raise ValidationError("; ".join(errors))
    matrix = DecisionMatrix(tuple(labels), tuple(names), tuple(tuple(r) for r in rows), tuple(weights))
    return ProblemDocument(matrix)


def _round(v: float) -> float:
    return round(float(v), DECIMALS)


def document_to_dict(doc: ProblemDocument) -> dict:
    m = doc.matrix
    return {
        "alternatives": list(m.alternatives),
        "criteria": [
            {"name": name, "weight": _round(w), "direction": d}
            for name, w, d in zip(m.criteria, m.weights, m.directions)
        ],
        "assessments": [[{"x": _round(z.x), "c": _round(z.c)} for z in row] for row in m.assessments],
        "params": {
            "alpha": doc.params.alpha,
            "beta": doc.params.beta,
            "theta": doc.params.theta,
            "profile": doc.params.profile,
        },
    }


def dumps(doc: ProblemDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2)


def aggregate_group(docs: Sequence[ProblemDocument], dm_weights: Sequence[float] | None = None) -> ProblemDocument:
    """Merge several decision makers' matrices cell by cell.

    Each cell becomes the weighted BUI mean of that cell across decision
    makers. Criteria, weights and params are taken from the first document.
    """
    if not docs:
        raise ValidationError("no decision makers to aggregate")
    if dm_weights is None:
        dm_weights = [1.0 / len(docs)] * len(docs)
    if len(dm_weights) != len(docs):
        raise ValidationError(f"expected {len(docs)} decision-maker weights, got {len(dm_weights)}")
    dm_weights = check_weights(dm_weights)
    first = docs[0].matrix
    for d, doc in enumerate(docs[1:], start=2):
        other = doc.matrix
        for attr in ("alternatives", "criteria", "directions"):
            if getattr(other, attr) != getattr(first, attr):
                raise ValidationError(f"document {d}: {attr} differ from document 1")
        if any(abs(a - b) > 1e-9 for a, b in zip(other.weights, first.weights)):
            raise ValidationError(f"document {d}: criterion weights differ from document 1")
    n, m = first.shape
    rows = tuple(
        tuple(weighted_bui_mean([doc.matrix.assessments[i][k] for doc in docs], dm_weights) for k in range(m))
        for i in range(n)
    )
    matrix = DecisionMatrix(first.alternatives, first.criteria, rows, first.weights, first.directions)
    return ProblemDocument(matrix, docs[0].params)
