"""Reading numeric CSV files with row/column-precise error messages."""

import csv

import numpy as np

from ._validation import DataError


def _parse(cell, line, column):
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"non-numeric cell {cell!r} at line {line}, column {column}") from None
    if not np.isfinite(value):
        raise DataError(f"non-finite cell {cell!r} at line {line}, column {column}")
    return value


def read_matrix(path):
    """
    Read a comma-separated design matrix whose first row holds feature names.

    Returns
    -------
    names : list of str
    X : ndarray, shape (n, p)
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            names = [name.strip() for name in next(reader)]
        except StopIteration:
            raise DataError(f"{path} is empty") from None
        rows = []
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            line = reader.line_num
            if len(row) != len(names):
                raise DataError(f"line {line} of {path} has {len(row)} fields, header has {len(names)}")
            rows.append([_parse(c, line, names[j] or j + 1) for j, c in enumerate(row)])
    if not rows:
        raise DataError(f"{path} has a header but no data rows")
    return names, np.array(rows, dtype=np.float64)


def read_response(path):
    """Read a single-column numeric CSV; a non-numeric first row is taken as a header."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DataError(f"{path} is empty")
    for i, row in enumerate(rows):
        if len(row) != 1:
            raise DataError(f"response file {path} must have one column; row {i + 1} has {len(row)}")
    try:
        float(rows[0][0])
        start = 0
    except ValueError:
        start = 1
    values = [_parse(row[0], i + 1, 1) for i, row in enumerate(rows) if i >= start]
    if not values:
        raise DataError(f"{path} has no response values")
    return np.array(values, dtype=np.float64)
