import math

import numpy as np
import pytest

from airscreen.screening import screen_sis
from airscreen.simulate import (
    SimSetting, gen_beta, gen_dataset, gen_design, gen_response, replicate_seed, signal_floor,
    signal_variance,
)


def offdiag_corr(X):
    C = np.corrcoef(X, rowvar=False)
    return C[~np.eye(C.shape[0], dtype=bool)]


class TestDesign:
    def test_independent(self):
        X = gen_design(5000, 4, 0.0, np.random.default_rng(0))
        assert np.abs(offdiag_corr(X)).max() <= 0.05

    def test_equicorrelated(self):
        X = gen_design(5000, 4, 0.9, np.random.default_rng(1))
        assert np.abs(offdiag_corr(X) - 0.9).max() <= 0.05

    def test_marginal(self):
        x = gen_design(5000, 1, 0.0, np.random.default_rng(2))[:, 0]
        assert abs(x.mean()) <= 0.05
        assert abs(x.var(ddof=1) - 1) <= 0.07

    def test_covariance_converges(self):
        rho = 0.3
        X = gen_design(20000, 5, rho, np.random.default_rng(3))
        target = (1 - rho) * np.eye(5) + rho
        assert np.abs(np.cov(X, rowvar=False) - target).max() <= 0.05

    @pytest.mark.parametrize("rho", [-0.1, 1.0])
    def test_rejects_rho(self, rho):
        with pytest.raises(ValueError):
            gen_design(10, 3, rho, np.random.default_rng(0))


class TestBeta:
    def test_support_and_floor(self):
        beta = gen_beta(125, 40, 9, np.random.default_rng(4))
        assert np.count_nonzero(beta) == 9
        assert np.all(beta[9:] == 0)
        assert np.abs(beta[:9]).min() >= signal_floor(125)

    def test_floor_value(self):
        assert signal_floor(125) == pytest.approx(4 * math.log(125) / math.sqrt(125))
        assert signal_floor(125) == pytest.approx(1.727, abs=5e-4)

    def test_sign_frequency(self):
        beta = gen_beta(100, 10000, 10000, np.random.default_rng(5))
        assert abs(np.mean(beta < 0) - 0.4) <= 0.02

    def test_rejects_p0(self):
        with pytest.raises(ValueError):
            gen_beta(10, 3, 4, np.random.default_rng(0))


class TestResponse:
    def test_half_r2(self):
        rng = np.random.default_rng(6)
        beta = np.array([1.0, -2.0, 0.5, 0.0])
        _, sigma2 = gen_response(np.ones((3, 4)), beta, 0.3, 0.5, rng)
        assert sigma2 == pytest.approx(signal_variance(beta, 0.3))

    def test_identity_covariance(self):
        assert signal_variance([1.0, 1.0, 0.0, 0.0], 0.0) == 2.0

    def test_sigma2_identity(self):
        beta = np.array([1.5, -0.7, 2.2])
        rho, r2 = 0.6, 0.75
        expected = (1 - r2) / r2 * ((1 - rho) * np.sum(beta**2) + rho * np.sum(beta) ** 2)
        Sigma = (1 - rho) * np.eye(3) + rho
        _, sigma2 = gen_response(np.zeros((2, 3)), beta, rho, r2, np.random.default_rng(0))
        assert sigma2 == pytest.approx(expected, rel=1e-14)
        assert sigma2 == pytest.approx((1 - r2) / r2 * beta @ Sigma @ beta, rel=1e-14)

    @pytest.mark.parametrize("r2", [0.25, 0.75, 0.95])
    def test_empirical_r2(self, r2):
        rng = np.random.default_rng(7)
        X = gen_design(5000, 6, 0.3, rng)
        beta = gen_beta(200, 6, 4, rng)
        y, _ = gen_response(X, beta, 0.3, r2, rng)
        signal = X @ beta
        assert abs(signal.var() / y.var() - r2) <= 0.03

    @pytest.mark.parametrize("r2", [0.0, 1.0])
    def test_rejects_r2(self, r2):
        with pytest.raises(ValueError):
            gen_response(np.ones((2, 2)), np.ones(2), 0.0, r2, np.random.default_rng(0))


class TestDataset:
    def test_bit_identical(self):
        s = SimSetting(30, 60, 0.6, 3, 0.5, seed=11)
        a, b = gen_dataset(s), gen_dataset(s)
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.y, b.y)
        np.testing.assert_array_equal(a.beta, b.beta)

    def test_seed_changes_design(self):
        a = gen_dataset(SimSetting(30, 60, 0.6, 3, 0.5, seed=1))
        b = gen_dataset(SimSetting(30, 60, 0.6, 3, 0.5, seed=2))
        assert not np.array_equal(a.X, b.X)

    def test_r2_only_changes_noise_scale(self):
        a = gen_dataset(SimSetting(30, 60, 0.6, 3, 0.5, seed=3))
        b = gen_dataset(SimSetting(30, 60, 0.6, 3, 0.9, seed=3))
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.beta, b.beta)
        ea = (a.y - a.X @ a.beta) / math.sqrt(a.sigma2)
        eb = (b.y - b.X @ b.beta) / math.sqrt(b.sigma2)
        np.testing.assert_allclose(ea, eb, atol=1e-10)

    def test_fields(self):
        ds = gen_dataset(SimSetting(40, 50, 0.3, 4, 0.75, seed=4))
        np.testing.assert_array_equal(ds.true_idx, np.arange(4))
        assert ds.sigma2 == pytest.approx(1 / 3 * signal_variance(ds.beta, 0.3))

    @pytest.mark.parametrize("kwargs", [dict(p0=0), dict(p0=70), dict(rho=1.0), dict(r2=1.0),
                                        dict(n=1), dict(seed=-1)])
    def test_invalid_settings(self, kwargs):
        base = dict(n=40, p=50, rho=0.3, p0=4, r2=0.75, seed=0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            SimSetting(**base)

    def test_replicate_seeds_distinct(self):
        seeds = {replicate_seed(7, b) for b in range(1000)}
        assert len(seeds) == 1000
        assert replicate_seed(7, 3) == replicate_seed(7, 3)


def test_sis_near_perfect_for_independent_features():
    hits = 0
    for b in range(100):
        ds = gen_dataset(SimSetting(125, 250, 0.0, 3, 0.95, replicate_seed(99, b)))
        res = screen_sis(ds.X, ds.y)
        assert res.m == 26
        hits += set(ds.true_idx) <= set(res.screened.tolist())
    assert hits >= 90
