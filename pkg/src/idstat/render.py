"""Deterministic output rendering: canonical JSON (sorted keys, 17
significant digits for floats), CSV tables, and plain-text reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import InputError


def fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InputError(f"cannot render non-finite float {x!r}")
    text = format(float(x), ".17g")
    return text


def _emit(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise InputError(f"JSON object keys must be strings, got {key!r}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise InputError(f"cannot render {type(obj).__name__} as JSON")


def canonical_json(obj) -> str:
    """Byte-deterministic JSON: keys sorted, floats at 17 significant
    digits, no insignificant whitespace."""
    out: list = []
    _emit(obj, out)
    return "".join(out)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def table_text(rows, indent: str = "  ") -> str:
    """Column-aligned plain-text table."""
    cells = [[_cell(v) for v in row] for row in rows]
    if not cells:
        return ""
    widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(len(cells[0]))]
    lines = []
    for row in cells:
        lines.append(indent + "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


@dataclass(frozen=True)
class Report:
    """One command result in all three output shapes."""

    data: dict
    table: list
    text: str

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return canonical_json(self.data)
        if fmt == "csv":
            return csv_text(self.table)
        if fmt == "pretty":
            return self.text
        raise InputError(f"unknown output format {fmt!r}")
