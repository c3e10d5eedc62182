"""
Synthetic regression data with equicorrelated Gaussian features.

Rows of X are iid ``N(0, (1 - rho) I + rho 11^T)``. The first ``p0``
coefficients are ``(-1)^u (|z| + 4 ln(n) / sqrt(n))`` with
``u ~ Bernoulli(0.4)`` and ``z ~ N(0, 1)``; the rest are zero. Noise variance
is set from the population signal variance so that the theoretical R^2 is
exact.

Random streams
--------------
A dataset's seed is expanded with ``numpy.random.SeedSequence([seed, k])``
for k = 0 (design), 1 (coefficients) and 2 (noise). Changing only ``r2``
therefore reuses the same design, coefficients and standardized noise draw.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import as_design

DESIGN_STREAM, BETA_STREAM, NOISE_STREAM = 0, 1, 2


def stream(seed, k):
    """Independent generator number ``k`` derived from ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(k)]))


def _check_rho(rho):
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"rho must lie in [0, 1), got {rho}")


def gen_design(n, p, rho, rng):
    """Draw an n x p design with unit variances and common correlation ``rho``."""
    _check_rho(rho)
    common = rng.standard_normal((n, 1))
    noise = rng.standard_normal((n, p))
    return math.sqrt(rho) * common + math.sqrt(1.0 - rho) * noise


def signal_floor(n):
    """Smallest possible non-zero coefficient magnitude, ``4 ln(n) / sqrt(n)``."""
    return 4.0 * math.log(n) / math.sqrt(n)


def gen_beta(n, p, p0, rng):
    """Coefficient vector whose first ``p0`` entries are signed signals."""
    if not 0 <= p0 <= p:
        raise ValueError(f"need 0 <= p0 <= p, got p0={p0}, p={p}")
    beta = np.zeros(p)
    z = rng.standard_normal(p0)
    negative = rng.random(p0) < 0.4
    beta[:p0] = np.where(negative, -1.0, 1.0) * (np.abs(z) + signal_floor(n))
    return beta


def signal_variance(beta, rho):
    """Population variance of ``x^T beta``: ``(1 - rho) |beta|^2 + rho (sum beta)^2``."""
    beta = np.asarray(beta, dtype=np.float64)
    return (1.0 - rho) * float(beta @ beta) + rho * float(beta.sum()) ** 2


def gen_response(X, beta, rho, r2, rng):
    """
    Draw ``y = X beta + eps`` with ``eps ~ N(0, sigma2)``.

    Returns
    -------
    y : ndarray, shape (n,)
    sigma2 : float
        ``(1 - r2) / r2`` times the population signal variance.
    """
    if not 0.0 < r2 < 1.0:
        raise ValueError(f"r2 must lie in (0, 1), got {r2}")
    X = as_design(X, min_rows=1)
    sigma2 = (1.0 - r2) / r2 * signal_variance(beta, rho)
    y = X @ beta + math.sqrt(sigma2) * rng.standard_normal(X.shape[0])
    return y, sigma2


@dataclass(frozen=True)
class SimSetting:
    """One simulation cell plus the seed of a single replicate."""

    n: int
    p: int
    rho: float
    p0: int
    r2: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2 or self.p < 1:
            raise ValueError(f"need n >= 2 and p >= 1, got n={self.n}, p={self.p}")
        if not 1 <= self.p0 <= self.p:
            raise ValueError(f"need 1 <= p0 <= p, got p0={self.p0}, p={self.p}")
        _check_rho(self.rho)
        if not 0.0 < self.r2 < 1.0:
            raise ValueError(f"r2 must lie in (0, 1), got {self.r2}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SimDataset:
    X: np.ndarray
    y: np.ndarray
    beta: np.ndarray
    true_idx: np.ndarray
    sigma2: float


def gen_dataset(setting):
    """Generate the dataset fully determined by ``setting``."""
    s = setting
    X = gen_design(s.n, s.p, s.rho, stream(s.seed, DESIGN_STREAM))
    beta = gen_beta(s.n, s.p, s.p0, stream(s.seed, BETA_STREAM))
    y, sigma2 = gen_response(X, beta, s.rho, s.r2, stream(s.seed, NOISE_STREAM))
    return SimDataset(X=X, y=y, beta=beta, true_idx=np.arange(s.p0), sigma2=sigma2)


def replicate_seed(base_seed, replicate):
    """64-bit seed of replicate ``replicate`` under ``base_seed``."""
    state = np.random.SeedSequence([int(base_seed), int(replicate)]).generate_state(1, np.uint64)
    return int(state[0])
