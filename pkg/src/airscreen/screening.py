"""
Non-adaptive screeners: HOLP, Ridge-HOLP at a fixed penalty, and SIS.

Feature indices are 0-based throughout. ``ranking[0]`` is the feature with
the largest absolute score; exact ties go to the lower index.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import DataError, as_design, as_response
from .linalg import eigen_of, ridge_dual


class ScreeningWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ScreeningResult:
    """
    Scores and ranking produced by one screener.

    Attributes
    ----------
    scores : ndarray, shape (p,)
        Screening statistic per feature (coefficient or correlation).
    ranking : ndarray of int, shape (p,)
        Feature indices ordered by decreasing ``|scores|``.
    m : int
        Number of features kept.
    method : str
        Short description such as ``"ridge-holp(r=10)"``.
    """

    scores: np.ndarray
    ranking: np.ndarray
    m: int
    method: str

    @property
    def screened(self):
        """Indices of the top ``m`` features, in rank order."""
        return self.ranking[: self.m]

    @property
    def positions(self):
        """1-based rank position of every feature."""
        pos = np.empty_like(self.ranking)
        pos[self.ranking] = np.arange(1, self.ranking.size + 1)
        return pos


def default_threshold(n):
    """Screening size ``ceil(n / ln n)``."""
    if n < 2:
        raise ValueError(f"threshold needs n >= 2, got {n}")
    return math.ceil(n / math.log(n))


def rank_features(scores):
    """Order features by decreasing ``|score|``, ties broken by ascending index."""
    return np.argsort(-np.abs(scores), kind="stable")


def resolve_threshold(n, p, m=None):
    """Pick the screening size, defaulting to ``ceil(n / ln n)`` and capping at ``p``."""
    if m is None:
        m = default_threshold(n)
    m = int(m)
    if m < 1:
        raise ValueError(f"screening size must be positive, got {m}")
    if m > p:
        warnings.warn(f"threshold {m} exceeds p = {p}; keeping all features",
                      ScreeningWarning, stacklevel=3)
        m = p
    return m


def _result(scores, m, method, n):
    scores = np.asarray(scores, dtype=np.float64)
    m = resolve_threshold(n, scores.size, m)
    return ScreeningResult(scores=scores, ranking=rank_features(scores), m=m, method=method)


def screen_ridge_holp(X, y, r=10.0, eig=None, m=None):
    """
    Rank features by ridge coefficients computed in the dual.

    Parameters
    ----------
    X : array_like, shape (n, p)
    y : array_like, shape (n,)
    r : float
        Penalty, ``r >= 0``. ``r = 0`` is HOLP.
    eig : EigenSystem, optional
        Decomposition of ``X @ X.T``; computed if omitted.
    m : int, optional
        Number of features to keep; defaults to ``ceil(n / ln n)``.
    """
    X = as_design(X)
    y = as_response(y, X.shape[0])
    if eig is None:
        eig = eigen_of(X)
    beta = ridge_dual(X, y, r, eig)
    label = "holp" if r == 0 else f"ridge-holp(r={r:g})"
    return _result(beta, m, label, X.shape[0])


def screen_holp(X, y, eig=None, m=None):
    """
    Rank features by the minimum-norm least-squares coefficients ``X.T (X X.T)^+ y``.

    A rank-deficient ``X @ X.T`` falls back to the pseudoinverse and warns.
    """
    X = as_design(X)
    if eig is None:
        eig = eigen_of(X)
    if not eig.full_rank:
        warnings.warn(f"X X^T has rank {eig.rank} < n = {eig.n}; using the pseudoinverse",
                      ScreeningWarning, stacklevel=2)
    return screen_ridge_holp(X, y, 0.0, eig=eig, m=m)


def marginal_correlations(X, y):
    """Pearson correlation of each column with ``y``; constant columns get 0."""
    X = as_design(X)
    y = as_response(y, X.shape[0])
    yc = y - y.mean()
    ynorm = np.linalg.norm(yc)
    if ynorm <= 1e-12 * max(1.0, np.abs(y).max()):
        raise DataError("zero-variance response")
    Xc = X - X.mean(axis=0)
    xnorm = np.linalg.norm(Xc, axis=0)
    constant = xnorm <= 1e-12 * np.maximum(1.0, np.abs(X).max(axis=0))
    if constant.any():
        warnings.warn(f"{int(constant.sum())} constant column(s) scored 0",
                      ScreeningWarning, stacklevel=3)
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = (Xc.T @ yc) / (xnorm * ynorm)
    corr[constant] = 0.0
    return corr


def screen_sis(X, y, m=None):
    """Rank features by absolute marginal Pearson correlation with ``y``."""
    corr = marginal_correlations(X, y)
    return _result(corr, m, "sis", np.shape(X)[0])
