"""Deterministic CSV/JSON rendering shared by the command-line tools.

CSV cells use 6 significant digits; JSON numbers use Python's shortest
round-trip representation.  Both are stable across runs and platforms.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Iterable, Sequence

__all__ = ["format_cell", "render_csv", "render_json", "table_payload", "write_output"]


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def render_csv(columns: Sequence[str], rows: Iterable[Sequence], footnotes: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    for note in footnotes:
        buf.write(f"# {note}\n")
    return buf.getvalue()


def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def table_payload(columns: Sequence[str], rows: Iterable[Sequence], footnotes: Sequence[str] = ()) -> dict:
    payload = {"columns": list(columns), "rows": [list(r) for r in rows]}
    if footnotes:
        payload["footnotes"] = list(footnotes)
    return payload


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
