"""Input coercion shared by the public functions."""

import numpy as np


class DataError(ValueError):
    """Raised when input data cannot be screened (bad shape, non-finite, constant response)."""


def as_design(X, min_rows=2):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DataError(f"design matrix must be 2-D, got shape {X.shape}")
    n, p = X.shape
    if n < min_rows or p < 1:
        raise DataError(f"design matrix needs n >= {min_rows} and p >= 1, got {n}x{p}")
    if not np.all(np.isfinite(X)):
        raise DataError("design matrix contains non-finite entries")
    return X


def as_response(y, n=None):
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 2 and 1 in y.shape:
        y = y.ravel()
    if y.ndim != 1:
        raise DataError(f"response must be a vector, got shape {y.shape}")
    if n is not None and y.shape[0] != n:
        raise DataError(f"response has length {y.shape[0]}, design has {n} rows")
    if not np.all(np.isfinite(y)):
        raise DataError("response contains non-finite entries")
    return y
