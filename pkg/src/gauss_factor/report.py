"""Report container and its CSV / JSON wire formats.

CSV: mandatory header, rationals as ``p/q``, reals with 17 significant
digits, booleans as ``true``/``false``. JSON: an object with keys
``command``, ``n``, ``params``, ``rows``, ``summary``; every integer is
written as a decimal string so large N survive.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exact import TrialFactor, parse_natural, parse_trial

__all__ = ["Report", "format_cell", "to_csv", "to_json", "parse_csv", "COLUMN_TYPES"]

# Column name -> type tag used when parsing CSV back.
COLUMN_TYPES = {
    "trial": "rational",
    "trial_value": "real",
    "M": "int",
    "k": "int",
    "b": "int",
    "frac_fixed": "int",
    "real": "real",
    "imag": "real",
    "value": "real",
    "magnitude": "real",
    "cosine": "real",
    "pulse_phase": "real",
    "accumulated_phase": "real",
    "signal": "real",
    "weight": "real",
    "is_integer_trial": "bool",
    "classification": "str",
    "cosine_classification": "str",
    "exact": "str",
}


@dataclass
class Report:
    command: str
    n: int
    params: dict
    columns: tuple[str, ...]
    rows: list[dict]
    summary: dict = field(default_factory=dict)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (Fraction, TrialFactor)):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _json_value(value):
    if value is None or isinstance(value, (bool, float, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (int, Fraction, TrialFactor)):
        return format_cell(value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    raise TypeError(f"cannot serialize {value!r}")


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(report.columns)
    for row in report.rows:
        w.writerow([format_cell(row[c]) for c in report.columns])
    return buf.getvalue()


def to_json(report: Report) -> str:
    doc = {
        "command": report.command,
        "n": format_cell(report.n),
        "params": _json_value(report.params),
        "rows": [{c: _json_value(row[c]) for c in report.columns} for row in report.rows],
        "summary": _json_value(report.summary),
    }
    return json.dumps(doc, indent=2) + "\n"


def _parse_cell(kind: str, text: str):
    if text == "":
        return None
    if kind == "int":
        return parse_natural(text)
    if kind == "real":
        return float(text)
    if kind == "bool":
        return {"true": True, "false": False}[text]
    if kind == "rational":
        return parse_trial(text)
    return text


def parse_csv(text: str) -> tuple[tuple[str, ...], list[dict]]:
    """Read CSV written by :func:`to_csv` back into typed rows."""
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    rows = []
    for raw in reader:
        rows.append({c: _parse_cell(COLUMN_TYPES.get(c, "str"), v) for c, v in zip(header, raw)})
    return header, rows
