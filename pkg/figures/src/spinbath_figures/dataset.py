"""CSV loading and schema validation for the standard datasets.

The renderer never recomputes physics: CSV files are its only input, and
every file is checked against the column set a figure expects before any
drawing happens. Schema problems (empty file, missing or non-numeric
column, ragged row) raise SchemaError; file-system problems propagate as
OSError so the command line can map the two to different exit codes.
"""

from __future__ import annotations

import csv

import numpy as np


class SchemaError(ValueError):
    """A CSV file does not have the shape a figure needs."""


def read_table(path: str) -> dict:
    """Load a CSV file into a column-name -> float array mapping."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected a header row") from None
        rows = list(reader)
    if len(set(header)) != len(header):
        raise SchemaError(f"{path}: duplicate column names in header")
    if not rows:
        raise SchemaError(f"{path}: header only, no data rows")
    columns = {name: np.empty(len(rows)) for name in header}
    for i, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"{path}:{i}: expected {len(header)} fields, got {len(row)}")
        for name, text in zip(header, row):
            try:
                columns[name][i - 2] = float(text)
            except ValueError:
                raise SchemaError(
                    f"{path}:{i}: non-numeric value {text!r} in column "
                    f"{name}") from None
    return columns


def require_columns(table: dict, names, path: str) -> None:
    """Check that every named column is present, naming the absentees."""
    missing = [name for name in names if name not in table]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
