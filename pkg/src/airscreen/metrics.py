"""Screening performance metrics and multiple correlation of small submodels."""

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import DataError, as_design, as_response

EXHAUSTIVE_LIMIT = 1_000_000
_CHUNK = 20_000


def true_positions(result, true_idx):
    """1-based rank positions of the true features in a ScreeningResult."""
    true_idx = np.asarray(true_idx, dtype=np.intp).ravel()
    p = result.ranking.size
    if true_idx.size == 0:
        raise ValueError("true_idx is empty")
    if true_idx.min() < 0 or true_idx.max() >= p:
        raise ValueError(f"true feature index out of range [0, {p})")
    return result.positions[true_idx]


def sure_screening_threshold(result, true_idx):
    """Smallest model size that contains every true feature."""
    return int(true_positions(result, true_idx).max())


@dataclass(frozen=True)
class BatchOutcome:
    """
    True-feature rank positions across B replicates.

    ``positions[b, j]`` is the 1-based rank of true feature j in replicate b.
    """

    positions: np.ndarray
    m: int

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=np.int64))
        object.__setattr__(self, "positions", pos)
        if pos.shape[0] == 0:
            raise ValueError("batch has no replicates")
        if pos.min() < 1:
            raise ValueError("rank positions are 1-based")

    @property
    def B(self):
        return self.positions.shape[0]

    @property
    def thresholds(self):
        return self.positions.max(axis=1)

    @classmethod
    def from_thresholds(cls, thresholds, m):
        return cls(np.asarray(thresholds).reshape(-1, 1), m)


def sure_screening_probability(batch):
    """Fraction of replicates in which all true features rank within ``batch.m``."""
    return float(np.mean(batch.thresholds <= batch.m))


def _centered(y, X):
    y = as_response(y)
    X = as_design(X, min_rows=1)
    if X.shape[0] != y.shape[0]:
        raise DataError(f"response has length {y.shape[0]}, design has {X.shape[0]} rows")
    yc = y - y.mean()
    tss = float(yc @ yc)
    if tss <= 1e-24 * max(1.0, float(y @ y)):
        raise DataError("zero-variance response")
    return yc, X - X.mean(axis=0), tss


def _subset_r2(G, c, tss, subsets):
    # Explained sum of squares c_S^T G_S^+ c_S for a stack of index tuples.
    S = np.asarray(subsets, dtype=np.intp)
    Gs = G[S[:, :, None], S[:, None, :]]
    cs = c[S]
    coef = np.einsum("bij,bj->bi", np.linalg.pinv(Gs, rcond=1e-10, hermitian=True), cs)
    return np.einsum("bi,bi->b", coef, cs) / tss


def best_subset(y, X_screened, k, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """
    Size-``k`` subset of the columns with the largest multiple correlation.

    Every subset is tried when there are at most ``exhaustive_limit`` of them;
    otherwise greedy forward selection is used and a warning is issued. Ties
    go to the lexicographically smallest subset.

    Returns
    -------
    R : float
        ``sqrt(|y_hat - ybar|^2 / |y - ybar|^2)`` of the least-squares fit
        with intercept.
    subset : tuple of int
    """
    yc, Xc, tss = _centered(y, X_screened)
    q = Xc.shape[1]
    if not 1 <= k <= q:
        raise ValueError(f"model size must lie in [1, {q}], got {k}")
    G = Xc.T @ Xc
    c = Xc.T @ yc

    if math.comb(q, k) <= exhaustive_limit:
        best_r2, best_set = -np.inf, None
        combos = itertools.combinations(range(q), k)
        while True:
            chunk = list(itertools.islice(combos, _CHUNK))
            if not chunk:
                break
            r2 = _subset_r2(G, c, tss, chunk)
            i = int(np.argmax(r2))
            if r2[i] > best_r2:
                best_r2, best_set = float(r2[i]), tuple(chunk[i])
    else:
        warnings.warn(f"C({q}, {k}) subsets exceed {exhaustive_limit}; using forward selection",
                      RuntimeWarning, stacklevel=2)
        chosen = []
        for _ in range(k):
            rest = [j for j in range(q) if j not in chosen]
            trial = [tuple(sorted(chosen + [j])) for j in rest]
            r2 = _subset_r2(G, c, tss, trial)
            i = int(np.argmax(r2))
            chosen = list(trial[i])
            best_r2 = float(r2[i])
        best_set = tuple(chosen)
    return math.sqrt(min(max(best_r2, 0.0), 1.0)), best_set


def multiple_r(y, X_screened, k, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """Largest multiple correlation over size-``k`` subsets of the screened columns."""
    return best_subset(y, X_screened, k, exhaustive_limit)[0]


def multiple_r_curve(y, X_screened, k_max, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """``[(k, R, subset), ...]`` for ``k = 1..k_max``."""
    k_max = min(int(k_max), np.shape(X_screened)[1])
    return [(k, *best_subset(y, X_screened, k, exhaustive_limit)) for k in range(1, k_max + 1)]
