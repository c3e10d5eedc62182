import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airscreen import DataError
from airscreen.linalg import eigen_of, ridge_dual, standardize
from airscreen.screening import (
    ScreeningWarning, default_threshold, rank_features, screen_holp, screen_ridge_holp, screen_sis,
)


def rand(shape, seed):
    return np.random.default_rng(seed).standard_normal(shape)


class TestThreshold:
    @pytest.mark.parametrize("n, m", [(92, 21), (125, 26), (3, 3), (200, 38)])
    def test_values(self, n, m):
        assert default_threshold(n) == m

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            default_threshold(1)

    def test_capped_at_p(self):
        X, y = rand((50, 5), 0), rand(50, 1)
        with pytest.warns(ScreeningWarning):
            res = screen_sis(X, y)
        assert res.m == 5


class TestRanking:
    def test_ties_broken_by_index(self):
        np.testing.assert_array_equal(rank_features([1.0, -2.0, 2.0, 0.0, 1.0]), [1, 2, 0, 4, 3])

    def test_result_invariants(self):
        X, y = rand((15, 40), 1), rand(15, 2)
        res = screen_ridge_holp(X, y, 10.0, m=7)
        assert sorted(res.ranking) == list(range(40))
        a = np.abs(res.scores[res.ranking])
        assert np.all(a[:-1] >= a[1:])
        np.testing.assert_array_equal(res.screened, res.ranking[:7])
        np.testing.assert_array_equal(res.positions[res.ranking], np.arange(1, 41))


class TestHolp:
    def test_identity_design(self):
        res = screen_holp(np.eye(4), [0.1, -3.0, 2.0, 0.0], m=2)
        np.testing.assert_array_equal(res.ranking, [1, 2, 0, 3])

    def test_orthogonal_rows(self):
        # Rows orthogonal with norms s: XX^T = diag(s^2), so beta = X^T (y / s^2).
        Q, _ = np.linalg.qr(rand((6, 6), 3))
        s = np.array([0.5, 1.0, 2.0, 3.0, 4.0, 6.0])
        X = s[:, None] * Q.T
        y = rand(6, 4)
        expected = X.T @ (y / np.sum(X**2, axis=1))
        res = screen_holp(X, y, m=3)
        np.testing.assert_allclose(res.scores, expected, atol=1e-10)
        np.testing.assert_array_equal(res.ranking, rank_features(expected))

    def test_matches_dual_at_zero(self):
        X, y = rand((10, 100), 5), rand(10, 6)
        eig = eigen_of(X)
        np.testing.assert_array_equal(screen_holp(X, y, eig=eig).scores,
                                      ridge_dual(X, y, 0.0, eig))

    def test_warns_when_rank_deficient(self):
        X = rand((5, 3), 7)
        with pytest.warns(ScreeningWarning, match="pseudoinverse"):
            screen_holp(X, rand(5, 8), m=2)


class TestRidgeHolp:
    def test_zero_penalty_is_holp(self):
        X, y = rand((10, 50), 9), rand(10, 10)
        np.testing.assert_array_equal(screen_ridge_holp(X, y, 0.0).ranking,
                                      screen_holp(X, y).ranking)

    def test_identity_design_order(self):
        res = screen_ridge_holp(np.eye(3), [-5.0, 1.0, 2.0], 10.0, m=3)
        np.testing.assert_array_equal(res.ranking, [0, 2, 1])
        assert res.method == "ridge-holp(r=10)"

    def test_large_penalty_matches_sis(self):
        Xs, _ = standardize(rand((8, 60), 11))
        y = rand(8, 12)
        y = y - y.mean()
        np.testing.assert_array_equal(screen_ridge_holp(Xs, y, 1e9).ranking, screen_sis(Xs, y).ranking)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            screen_ridge_holp(np.eye(3), [1, 2, 3], -1.0)


class TestSis:
    def test_perfect_correlation(self):
        X = rand((30, 10), 13)
        res = screen_sis(X, X[:, 7])
        assert res.ranking[0] == 7
        assert res.scores[7] == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_response(self):
        X = np.array([[1.0, 0.0, 2.0], [-1.0, 0.0, -2.0], [0.0, 1.0, 3.0], [0.0, -1.0, -3.0]])
        y = np.array([1.0, 1.0, -1.0, -1.0])
        res = screen_sis(X, y, m=2)
        np.testing.assert_array_equal(res.scores, 0.0)
        np.testing.assert_array_equal(res.ranking, [0, 1, 2])

    def test_matches_corrcoef(self):
        X, y = rand((20, 10), 15), rand(20, 16)
        expected = [np.corrcoef(X[:, j], y)[0, 1] for j in range(10)]
        np.testing.assert_allclose(screen_sis(X, y, m=3).scores, expected, atol=1e-12, rtol=0)

    def test_constant_column_scored_zero(self):
        X = rand((12, 4), 17)
        X[:, 2] = 3.0
        with pytest.warns(ScreeningWarning, match="constant"):
            res = screen_sis(X, rand(12, 18), m=2)
        assert res.scores[2] == 0.0
        assert res.ranking[-1] == 2

    def test_zero_variance_response(self):
        with pytest.raises(DataError, match="zero-variance"):
            screen_sis(rand((5, 3), 19), np.full(5, 2.0))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), scale=st.floats(1e-3, 1e3))
def test_ranking_invariant_to_response_scale(seed, scale):
    X, y = rand((12, 30), seed), rand(12, seed + 1)
    eig = eigen_of(X)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for screen in (lambda v: screen_ridge_holp(X, v, 10.0, eig=eig),
                       lambda v: screen_holp(X, v, eig=eig),
                       lambda v: screen_sis(X, v)):
            np.testing.assert_array_equal(screen(y).ranking, screen(scale * y).ranking)


def test_deterministic():
    X, y = rand((20, 200), 21), rand(20, 22)
    first = screen_ridge_holp(X, y, 10.0)
    for _ in range(3):
        np.testing.assert_array_equal(screen_ridge_holp(X, y, 10.0).ranking, first.ranking)
