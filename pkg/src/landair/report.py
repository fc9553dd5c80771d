"""Deterministic CSV/JSON emission for plot data and reports."""
from __future__ import annotations

import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        # repr is the shortest string that round-trips, i.e. full precision
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_cell(v) for v in r) + "\n")
    return buf.getvalue()


def emit_plot_data(header: Sequence[str], rows: Iterable[Sequence], path: str | Path | None) -> str:
    """Write ``rows`` as CSV (one header row) to ``path``, or stdout when ``path`` is None/'-'."""
    rows = list(rows)
    if not rows:
        raise ValueError("refusing to write an empty series")
    text = csv_text(header, rows)
    _write(text, path)
    return text


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit_json(obj, path: str | Path | None) -> str:
    text = json_text(obj)
    _write(text, path)
    return text


def _write(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
