"""Serialization of results to JSON, plain-text tables and CSV.

JSON documents keep field declaration order. Integers whose magnitude exceeds
2**53 - 1 are written as decimal strings so that double-based consumers do
not lose precision.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from typing import Any, Iterable, Sequence

MAX_SAFE_INT = 2**53 - 1


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, enum.Enum):
        return obj.value
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) <= MAX_SAFE_INT else str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, range)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return ", ".join(_cell(v) for v in value) if value else "[]"
    return str(value)


def _flatten(doc: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(doc, dict):
        out = []
        for k, v in doc.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else k)
        return out
    if isinstance(doc, list) and doc and all(isinstance(v, dict) for v in doc):
        out = []
        for i, v in enumerate(doc):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, doc)]


def render_row_table(row: dict[str, Any]) -> str:
    """A header line and one value line, columns aligned."""
    heads = list(row)
    cells = [_cell(row[h]) for h in heads]
    widths = [max(len(h), len(c)) for h, c in zip(heads, cells)]
    line1 = "  ".join(h.ljust(w) for h, w in zip(heads, widths)).rstrip()
    line2 = "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return f"{line1}\n{line2}\n"


def render_table(obj: Any) -> str:
    """Key/value listing with dotted paths for nested records."""
    pairs = _flatten(to_jsonable(obj))
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in pairs)


def render_csv(rows: Iterable[Sequence[Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
