"""
Air-HOLP: Ridge-HOLP with an adaptively selected penalty.

Each iteration estimates the expected response from the currently screened
features, then picks the penalty in ``[0, c * sqrt(n)]`` minimizing

    g(r) = sum_j a_j^2 d_j^2 / (d_j + r)^2 - 2 sum_j a_j b_j d_j / (d_j + r)

where ``d`` are the eigenvalues of ``X X^T``, ``a = U^T y`` and
``b = U^T y_tilde``. This is ``|y_hat_r|^2 - 2 y_tilde^T y_hat_r``, the
squared prediction error against ``y_tilde`` up to a constant.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ._validation import as_design, as_response
from .linalg import DEFAULT_RANK_TOL, row_gram, sym_eigen
from .screening import ScreeningResult, resolve_threshold, screen_ridge_holp

_SCAN_POINTS = 256
_SCAN_DECADES = 10
_NEWTON_MAX_ITER = 100


@dataclass
class PenaltyContext:
    """
    Quadratic forms of the penalty objective in the eigenbasis.

    Terms with ``d_j == 0`` contribute nothing and are dropped.
    """

    a: np.ndarray
    b: np.ndarray
    d: np.ndarray
    r_max: float
    _P: np.ndarray = field(init=False, repr=False)
    _Q: np.ndarray = field(init=False, repr=False)
    _d: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=np.float64)
        self.b = np.asarray(self.b, dtype=np.float64)
        self.d = np.asarray(self.d, dtype=np.float64)
        if not (self.a.shape == self.b.shape == self.d.shape) or self.a.ndim != 1:
            raise ValueError("a, b and d must be vectors of equal length")
        if np.any(self.d < 0):
            raise ValueError("eigenvalues must be nonnegative")
        if not (np.isfinite(self.r_max) and self.r_max > 0):
            raise ValueError(f"r_max must be positive and finite, got {self.r_max}")
        keep = self.d > 0
        self._d = self.d[keep]
        self._P = (self.a[keep] * self._d) ** 2
        self._Q = self.a[keep] * self.b[keep] * self._d


def _check_r(ctx, r):
    if not (0.0 <= r <= ctx.r_max):
        raise ValueError(f"penalty {r} outside [0, {ctx.r_max}]")


def _objective(ctx, r):
    # Vectorized over r; no range check.
    s = 1.0 / (ctx._d[:, None] + np.atleast_1d(r)[None, :])
    return ctx._P @ s**2 - 2.0 * (ctx._Q @ s)


def _first_derivative(ctx, r):
    s = 1.0 / (ctx._d[:, None] + np.atleast_1d(r)[None, :])
    return -2.0 * (ctx._P @ s**3) + 2.0 * (ctx._Q @ s**2)


def penalty_objective(ctx, r):
    """Evaluate ``g(r)`` for ``0 <= r <= ctx.r_max``."""
    _check_r(ctx, r)
    return float(_objective(ctx, r)[0])


def objective_derivatives(ctx, r):
    """Return ``(g'(r), g''(r))``."""
    _check_r(ctx, r)
    s = 1.0 / (ctx._d + r)
    s2 = s * s
    s3 = s2 * s
    g1 = -2.0 * (ctx._P @ s3) + 2.0 * (ctx._Q @ s2)
    g2 = 6.0 * (ctx._P @ (s3 * s)) - 4.0 * (ctx._Q @ s3)
    return float(g1), float(g2)


def _newton_in_bracket(ctx, lo, hi, x):
    """Root of g' in [lo, hi] with g'(lo) < 0 < g'(hi); Newton with bisection fallback."""
    x = min(max(x, lo), hi)
    for _ in range(_NEWTON_MAX_ITER):
        g1, g2 = objective_derivatives(ctx, x)
        if g1 == 0.0:
            return x
        if g1 < 0:
            lo = x
        else:
            hi = x
        x_new = x - g1 / g2 if g2 > 0 else math.nan
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-8 * (1.0 + x_new) or hi - lo <= 1e-15 * (1.0 + hi):
            return x_new
        x = x_new
    return x


def _scan_grid(ctx):
    r_max = ctx.r_max
    grid = np.geomspace(r_max * 10.0**-_SCAN_DECADES, r_max, _SCAN_POINTS)
    # Curvature concentrates near r = d_j; make sure those points are sampled.
    inside = ctx._d[(ctx._d > grid[0]) & (ctx._d < r_max)]
    return np.unique(np.concatenate(([0.0], grid, inside)))


def minimize_penalty(ctx, r_start=None):
    """
    Minimize the penalty objective over ``[0, ctx.r_max]``.

    ``g'`` is sampled on a log-spaced grid to bracket every local minimum;
    each bracket is refined by safeguarded Newton (started from ``r_start``
    when it falls inside the bracket). Stationary points, the best grid point
    and both endpoints are compared and the lowest objective wins; values
    equal to within 1e-12 relative go to the smaller penalty.

    Returns
    -------
    float
        Minimizing penalty in ``[0, ctx.r_max]``.
    """
    grid = _scan_grid(ctx)
    slope = _first_derivative(ctx, grid)
    values = _objective(ctx, grid)
    candidates = [0.0, ctx.r_max, float(grid[np.argmin(values)])]
    for i in np.flatnonzero((slope[:-1] < 0) & (slope[1:] >= 0)):
        lo, hi = float(grid[i]), float(grid[i + 1])
        if r_start is not None and lo <= r_start <= hi:
            x0 = r_start
        else:
            x0 = math.sqrt(lo * hi) if lo > 0 else 0.5 * hi
        candidates.append(_newton_in_bracket(ctx, lo, hi, x0))
    candidates = np.unique(np.clip(candidates, 0.0, ctx.r_max))
    values = _objective(ctx, candidates)
    # Round-off ties go to the smallest penalty.
    tied = values <= values.min() + 1e-12 * (1.0 + abs(values.min()))
    return float(candidates[np.flatnonzero(tied)[0]])


def estimate_expected_response(X, y, r, m, eig):
    """
    Estimate ``E[y]`` from the features screened by Ridge-HOLP at penalty ``r``.

    Fits least squares with an intercept on the top ``m`` features. A
    rank-deficient fit uses the minimum-norm solution (singular values below
    1e-10 of the largest are dropped).
    """
    X = as_design(X)
    y = as_response(y, X.shape[0])
    p = X.shape[1]
    if not 1 <= m <= p:
        raise ValueError(f"screening size must lie in [1, {p}], got {m}")
    top = screen_ridge_holp(X, y, r, eig=eig, m=m).screened
    A = np.column_stack((np.ones(X.shape[0]), X[:, top]))
    coef, *_ = np.linalg.lstsq(A, y, rcond=1e-10)
    return A @ coef


@dataclass(frozen=True)
class AirHolpConfig:
    """
    Parameters of the adaptive penalty search.

    ``m=None`` means ``ceil(n / ln n)``. Penalties are confined to
    ``[0, c * sqrt(n)]``.
    """

    r0: float = 10.0
    c: float = 1000.0
    m: Optional[int] = None
    delta: float = 0.01
    max_iter: int = 10

    def __post_init__(self):
        if not (self.r0 >= 0 and math.isfinite(self.r0)):
            raise ValueError(f"r0 must be finite and nonnegative, got {self.r0}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"c must be positive, got {self.c}")
        if self.m is not None and self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")

    def r_max(self, n):
        return self.c * math.sqrt(n)


@dataclass
class AirHolpTrace:
    """Penalty path and final screening of one Air-HOLP run."""

    penalties: List[float]
    converged: bool
    iterations: int
    final: ScreeningResult
    objective_values: List[float]

    @property
    def penalty(self):
        return self.penalties[-1]


def _settled(previous, current, delta):
    if current == 0.0:
        return previous == 0.0
    return abs(current - previous) < delta * current


def air_holp(X, y, config=None, eig=None):
    """
    Screen features with an adaptively chosen ridge penalty.

    Parameters
    ----------
    X : array_like, shape (n, p)
        Design matrix, standardized by the caller if desired.
    y : array_like, shape (n,)
    config : AirHolpConfig, optional
    eig : EigenSystem, optional
        Precomputed decomposition of ``X @ X.T``. When omitted it is computed
        once here and reused by every iteration.

    Returns
    -------
    AirHolpTrace
    """
    config = config or AirHolpConfig()
    X = as_design(X)
    n, p = X.shape
    y = as_response(y, n)
    m = resolve_threshold(n, p, config.m)
    r_max = config.r_max(n)
    if config.r0 > r_max:
        raise ValueError(f"r0 = {config.r0} exceeds the penalty bound {r_max}")
    if eig is None:
        eig = sym_eigen(row_gram(X), rank_tol=DEFAULT_RANK_TOL)
    U, d = eig.reduced()
    a = U.T @ y

    r = float(config.r0)
    penalties = [r]
    objective_values = []
    converged = False
    for _ in range(config.max_iter):
        y_tilde = estimate_expected_response(X, y, r, m, eig)
        ctx = PenaltyContext(a, U.T @ y_tilde, d, r_max)
        r_next = minimize_penalty(ctx, r_start=r)
        penalties.append(r_next)
        objective_values.append(penalty_objective(ctx, r_next))
        if _settled(r, r_next, config.delta):
            converged = True
            break
        r = r_next

    final = screen_ridge_holp(X, y, penalties[-1], eig=eig, m=m)
    final = ScreeningResult(final.scores, final.ranking, final.m,
                            f"air-holp(r={penalties[-1]:.6g})")
    return AirHolpTrace(penalties=penalties, converged=converged,
                        iterations=len(penalties) - 1, final=final,
                        objective_values=objective_values)
