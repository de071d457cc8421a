"""Deterministic tabular writers (CSV and JSON)."""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IoFailure

SIG_DIGITS = 12


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    v = float(value)
    if v == 0.0:
        return "0"
    return f"{v:.{SIG_DIGITS}g}"


def _json_value(value):
    if isinstance(value, (str, bool, int)) or value is None:
        return value
    return float(fmt(value))


def render(columns: Sequence[str], rows: Iterable[Sequence], fmt_name: str = "csv") -> str:
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
        return buf.getvalue()
    if fmt_name == "json":
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps({"columns": list(columns), "rows": records}, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt_name!r}")


def write_table(columns: Sequence[str], rows: Iterable[Sequence], path: str | Path | None,
                fmt_name: str = "csv") -> str:
    """Render and write to ``path`` (stdout when ``None``); returns the text."""
    text = render(columns, rows, fmt_name)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return text
    try:
        p = Path(path)
        if p.parent and not p.parent.exists():
            p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return text
