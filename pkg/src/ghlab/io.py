"""Reading and writing distance data.

Supported inputs:
  matrix JSON     {"labels": [...], "matrix": [[...], ...]}  (labels optional)
  condensed JSON  {"n": 3, "rho": [...]}
  CSV             n rows of n comma-separated reals, no header
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .errors import ParseError
from .metric import TOL, FiniteMetricSpace, from_condensed, validate


def _reject_constant(name):
    raise ParseError(f"non-finite value {name} is not allowed")


def _finite(values, where: str) -> list[float]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"{where}: expected a number, got {v!r}")
        if not math.isfinite(v):
            raise ParseError(f"{where}: non-finite value {v!r}")
        out.append(float(v))
    return out


def parse_json(text: str, tol: float = TOL) -> FiniteMetricSpace:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object with 'matrix' or 'rho'")
    labels = obj.get("labels")
    if "matrix" in obj:
        rows = obj["matrix"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("'matrix' must be a list of rows")
        grid = [_finite(r, f"matrix row {i}") for i, r in enumerate(rows)]
        return validate(grid, tol=tol, labels=labels)
    if "rho" in obj:
        if not isinstance(obj["rho"], list):
            raise ParseError("'rho' must be a list")
        rho = _finite(obj["rho"], "rho")
        n = obj.get("n")
        if n is not None and (not isinstance(n, int) or n < 1):
            raise ParseError(f"'n' must be a positive integer, got {n!r}")
        if n is None and not rho:
            n = 1
        try:
            return from_condensed(rho, n, tol=tol, labels=labels)
        except ValueError as exc:
            if isinstance(exc, ParseError) or type(exc) is ValueError:
                raise ParseError(str(exc)) from None
            raise
    raise ParseError("JSON object needs a 'matrix' or a 'rho' field")


def parse_csv(text: str, tol: float = TOL) -> FiniteMetricSpace:
    grid = []
    for i, row in enumerate(csv.reader(io.StringIO(text))):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise ParseError(f"CSV row {i}: non-numeric entry in {row!r}") from None
        if not all(math.isfinite(v) for v in vals):
            raise ParseError(f"CSV row {i}: non-finite value")
        grid.append(vals)
    if not grid:
        raise ParseError("empty CSV")
    return validate(grid, tol=tol)


def load_space(path, tol: float = TOL) -> FiniteMetricSpace:
    """Read a space from a .json or .csv file (format chosen by content for other suffixes)."""
    text = Path(path).read_text()
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return parse_csv(text, tol)
    if suffix == ".json" or text.lstrip().startswith("{"):
        return parse_json(text, tol)
    return parse_csv(text, tol)


def space_to_json(X: FiniteMetricSpace, form: str = "condensed") -> dict:
    if form == "condensed":
        out = {"n": X.n, "rho": list(X.rho)}
    elif form == "matrix":
        out = {"matrix": X.matrix.tolist()}
    else:
        raise ValueError(f"unknown form {form!r}")
    if X.labels:
        out["labels"] = list(X.labels)
    return out


def save_space(X: FiniteMetricSpace, path, form: str = "condensed") -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with path.open("w", newline="") as fh:
            csv.writer(fh).writerows([[repr(float(v)) for v in row] for row in X.matrix])
    else:
        path.write_text(json.dumps(space_to_json(X, form), indent=2) + "\n")
