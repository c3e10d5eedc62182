"""Random penalty-objective contexts shared by the unit and acceptance tests."""

import math

import numpy as np

from airscreen.airholp import PenaltyContext, estimate_expected_response
from airscreen.linalg import eigen_of, standardize
from airscreen.simulate import gen_beta, gen_design, gen_response


def synthetic_context(rng, n=None):
    n = n or int(rng.integers(4, 30))
    d = np.sort(rng.lognormal(mean=3.0, sigma=2.0, size=n))[::-1]
    a = rng.standard_normal(n) * rng.lognormal(0, 1, n)
    mix = rng.uniform(-0.5, 1.5)
    b = mix * a + rng.uniform(0, 2) * rng.standard_normal(n)
    return PenaltyContext(a, b, d, 1000.0 * math.sqrt(n))


def data_context(rng, n=None):
    """Context built the way Air-HOLP builds it, from a simulated dataset."""
    n = n or int(rng.integers(10, 40))
    p = int(rng.integers(n + 5, 6 * n))
    rho = float(rng.choice([0.0, 0.3, 0.6, 0.9]))
    X = gen_design(n, p, rho, rng)
    beta = gen_beta(n, p, min(3, p), rng)
    y, _ = gen_response(X, beta, rho, float(rng.uniform(0.2, 0.95)), rng)
    X, _ = standardize(X)
    y = y - y.mean()
    eig = eigen_of(X)
    U, d = eig.reduced()
    m = max(1, math.ceil(n / math.log(n)))
    y_tilde = estimate_expected_response(X, y, float(rng.uniform(0, 100)), m, eig)
    return PenaltyContext(U.T @ y, U.T @ y_tilde, d, 1000.0 * math.sqrt(n))


def random_context(rng, n=None):
    return synthetic_context(rng, n) if rng.random() < 0.5 else data_context(rng, n)


def oracle_grid(r_max, points=2000):
    return np.concatenate(([0.0], np.geomspace(1e-6 * r_max, r_max, points - 1)))


def brute_objective(ctx, r):
    """Direct sum, independent of the vectorized implementation."""
    total = 0.0
    for aj, bj, dj in zip(ctx.a, ctx.b, ctx.d):
        if dj > 0:
            total += (aj * dj / (dj + r)) ** 2 - 2.0 * aj * bj * dj / (dj + r)
    return total
