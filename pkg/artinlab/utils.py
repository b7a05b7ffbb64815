"""
Utility functions for artinlab output: flattening result rows, CSV
rendering and atomic file writes.
"""

import csv
import io
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np


def rational_columns(name: str, value: Fraction) -> dict[str, str]:
    """Split an exact rational into <name>_num / <name>_den decimal strings."""
    return {f"{name}_num": str(value.numerator), f"{name}_den": str(value.denominator)}


def plain_value(value: Any) -> Any:
    """Convert numpy scalars and enums to plain JSON-friendly Python values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [plain_value(v) for v in value]
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def flatten_row(row: dict[str, Any]) -> dict[str, Any]:
    """Flatten one result row.

    Fractions become numerator/denominator column pairs, nested dicts are
    inlined with their own keys, everything else becomes a plain value.
    """
    flat: dict[str, Any] = {}
    for key, value in row.items():
        if isinstance(value, Fraction):
            flat.update(rational_columns(key, value))
        elif isinstance(value, dict):
            flat.update(flatten_row(value))
        else:
            flat[key] = plain_value(value)
    return flat


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return " ".join(_csv_cell(v) for v in value)
    return str(value)


def render_csv(rows: Iterable[dict[str, Any]], columns: Optional[list[str]] = None) -> str:
    """Render flat rows as CSV; columns default to keys in first-seen order."""
    rows = list(rows)
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def write_atomic(path: str, text: str) -> Path:
    """Write text to path through a temporary file and an atomic rename."""
    target = Path(path).resolve()
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target
