"""One-call screening with the default preprocessing."""

from dataclasses import replace

import numpy as np

from ._validation import DataError, as_design, as_response
from .airholp import AirHolpConfig, air_holp
from .linalg import standardize as standardize_columns
from .screening import screen_holp, screen_ridge_holp, screen_sis

METHODS = ("sis", "holp", "ridge-holp", "air-holp")


def screen(X, y, method="air-holp", r=10.0, m=None, config=None, standardize=True):
    """
    Screen features of ``X`` for the response ``y``.

    By default the columns of ``X`` are centered and scaled to unit sample
    standard deviation and ``y`` is centered first.

    Parameters
    ----------
    method : {"sis", "holp", "ridge-holp", "air-holp"}
    r : float
        Penalty for ``"ridge-holp"``.
    m : int, optional
        Screening size; defaults to ``ceil(n / ln n)``.
    config : AirHolpConfig, optional
        Used by ``"air-holp"``; ``m`` overrides ``config.m`` when given.

    Returns
    -------
    result : ScreeningResult
    trace : AirHolpTrace or None
        Penalty path for ``"air-holp"``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    X = as_design(X)
    y = as_response(y, X.shape[0])
    if np.ptp(y) == 0:
        raise DataError("zero-variance response")
    if standardize:
        X, _ = standardize_columns(X)
        y = y - y.mean()
    if method == "sis":
        return screen_sis(X, y, m=m), None
    if method == "holp":
        return screen_holp(X, y, m=m), None
    if method == "ridge-holp":
        return screen_ridge_holp(X, y, r, m=m), None
    config = config or AirHolpConfig()
    if m is not None:
        config = replace(config, m=m)
    trace = air_holp(X, y, config)
    return trace.final, trace
