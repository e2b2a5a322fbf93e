"""Reading spaces, families, sequences and distributions from JSON or CSV."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from .applications import DiscreteDistribution
from .errors import InputError
from .family import FunctionFamily
from .measure import EXACT, MeasureSpace


class FloatLiteral(str):
    """A JSON number with a fraction or exponent, kept as text until its tier is known."""


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=FloatLiteral)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", field="input") from None


def number(value, tier: str, field: str, index: int | None = None):
    """Prepare a raw JSON value for :func:`chebcorr.measure.to_scalar`.

    Exact-tier inputs must spell non-integers as strings (``"1/2"``,
    ``"0.5"``); a bare float literal is an input error.
    """
    if isinstance(value, FloatLiteral):
        if tier == EXACT:
            raise InputError(f"float literal {value} not allowed in the exact tier; quote it", field, index)
        return float(value)
    if isinstance(value, (list, dict)) or value is None:
        raise InputError(f"expected a number, got {type(value).__name__}", field, index)
    return value


def numbers(values, tier: str, field: str) -> list:
    if not isinstance(values, list):
        raise InputError("expected a list", field)
    return [number(v, tier, field, i) for i, v in enumerate(values)]


def read_text(path: str) -> str:
    if path == "-":
        import sys

        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", field="input") from None


def _require(doc: dict, key: str, where: str = "input"):
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object", field=where)
    if key not in doc:
        raise InputError("missing", field=key)
    return doc[key]


def family_from_json(doc: dict, tier: str = EXACT) -> FunctionFamily:
    """``{"points": [...], "weights": [...], "functions": {"f1": [...], ...}}``.

    ``points`` may be omitted; labels then default to ``x0, x1, ...``.
    """
    weights = numbers(_require(doc, "weights"), tier, "weights")
    points = doc.get("points")
    if points is None:
        points = [f"x{j}" for j in range(len(weights))]
    if not isinstance(points, list):
        raise InputError("expected a list", field="points")
    functions = _require(doc, "functions")
    if not isinstance(functions, dict) or not functions:
        raise InputError("expected a non-empty object of named value lists", field="functions")
    space = MeasureSpace(points, weights, tier=tier, degenerate=bool(doc.get("degenerate", False)))
    table = {name: numbers(vals, tier, f"functions.{name}") for name, vals in functions.items()}
    return FunctionFamily.from_mapping(space, table)


def family_from_csv(text: str, tier: str = EXACT) -> FunctionFamily:
    """Rows are points, a ``weight`` column holds the measure, an optional
    ``point`` column the labels; every other column is a function."""
    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames or "weight" not in reader.fieldnames:
        raise InputError("CSV needs a 'weight' column", field="weight")
    names = [c for c in reader.fieldnames if c not in ("weight", "point")]
    if not names:
        raise InputError("CSV has no function columns", field="functions")
    points, weights = [], []
    table: dict[str, list] = {n: [] for n in names}
    for r, row in enumerate(reader):
        points.append(row.get("point") or f"x{r}")
        weights.append(_csv_cell(row["weight"], tier, "weight", r))
        for n in names:
            table[n].append(_csv_cell(row[n], tier, n, r))
    space = MeasureSpace(points, weights, tier=tier)
    return FunctionFamily.from_mapping(space, table)


def _csv_cell(cell: str | None, tier: str, field: str, index: int):
    if cell is None or not cell.strip():
        raise InputError("empty cell", field, index)
    cell = cell.strip()
    if tier == EXACT and "/" not in cell and any(ch in cell for ch in "eE"):
        raise InputError(f"exponent literal {cell} not allowed in the exact tier", field, index)
    return cell


def load_family(path: str, tier: str = EXACT) -> FunctionFamily:
    text = read_text(path)
    if path.lower().endswith(".csv"):
        return family_from_csv(text, tier)
    return family_from_json(loads(text), tier)


def distribution_from_json(doc, tier: str, name: str) -> DiscreteDistribution:
    if not isinstance(doc, dict):
        raise InputError("expected {\"support\": [...], \"probs\": [...]}", field=name)
    support = numbers(_require(doc, "support", name), tier, f"{name}.support")
    probs = numbers(_require(doc, "probs", name), tier, f"{name}.probs")
    return DiscreteDistribution(support, probs, tier=tier, name=name)
