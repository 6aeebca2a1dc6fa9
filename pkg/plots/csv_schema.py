"""Strict loaders for the rate-region CSV schemas produced by the gbctin CLI."""

from __future__ import annotations

from pathlib import Path

RATE_COLUMNS = ["scheme", "m1", "m2", "alpha", "ts_lambda", "r1", "r2",
                "method", "err_est"]
CAPACITY_COLUMNS = ["alpha", "c1", "c2"]
FIG5_REQUIRED = ["alpha", "c2"]
FIG5_CURVES = ["mi_52", "mi_42", "mi_33"]


class SchemaError(ValueError):
    """A CSV file does not conform to its published schema."""


def load_csv(path, required_columns, allow_empty=False):
    """Read a CSV into a list of per-column string dicts, validating columns.

    Raises SchemaError naming the offending file/column on a missing header
    column, a ragged row, or (unless allow_empty) a file without data rows.
    """
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path.name}: file not found at {path}")
    lines = path.read_text().splitlines()
    if not lines:
        raise SchemaError(f"{path.name}: empty file, expected a header row")
    header = lines[0].split(",")
    for column in required_columns:
        if column not in header:
            raise SchemaError(f"{path.name}: missing required column '{column}'")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise SchemaError(
                f"{path.name}: line {i} has {len(cells)} cells, expected "
                f"{len(header)}")
        rows.append(dict(zip(header, cells)))
    if not rows and not allow_empty:
        raise SchemaError(f"{path.name}: no data rows")
    return header, rows


def column(rows, name):
    """Extract one numeric column; empty cells become None."""
    out = []
    for row in rows:
        cell = row[name]
        out.append(float(cell) if cell != "" else None)
    return out
