"""
Dense linear algebra used by every screener.

The screeners work in the n-dimensional dual: the row-Gram matrix ``X @ X.T``
is decomposed once and every ridge quantity is expressed through its
eigenpairs, so a new penalty costs O(n^2 + np) instead of a fresh solve.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._validation import DataError, as_design, as_response

DEFAULT_RANK_TOL = 1e-12


def standardize(X, center=True, scale=True):
    """
    Center and optionally unit-scale the columns of a design matrix.

    Uses the sample standard deviation (``ddof=1``). Constant columns are
    centered only, so they come out as exact zeros.

    Parameters
    ----------
    X : array_like, shape (n, p)
        Design matrix with n >= 2 rows and finite entries.
    center : bool
        Subtract column means.
    scale : bool
        Divide non-constant columns by their sample standard deviation.

    Returns
    -------
    Xs : ndarray, shape (n, p)
        Transformed copy of ``X``.
    constant : ndarray of bool, shape (p,)
        Mask of columns with zero variance.
    """
    X = as_design(X)
    mean = X.mean(axis=0)
    sd = X.std(axis=0, ddof=1)
    constant = sd <= 1e-12 * np.maximum(1.0, np.abs(mean))
    Xs = X - mean if center else X.copy()
    if scale:
        # Without centering the scale still comes from the sample sd.
        divisor = np.where(constant, 1.0, sd)
        Xs = Xs / divisor
    if center:
        Xs[:, constant] = 0.0
    return Xs, constant


def row_gram(X):
    """Return the symmetric n x n matrix ``X @ X.T``."""
    X = as_design(X, min_rows=1)
    G = X @ X.T
    # Mirror the upper triangle so G is symmetric bit-for-bit.
    upper = np.triu(G)
    return upper + np.triu(G, 1).T


@dataclass(frozen=True)
class EigenSystem:
    """
    Eigendecomposition of a row-Gram matrix.

    Attributes
    ----------
    eigvecs : ndarray, shape (n, n)
        Orthonormal eigenvectors as columns.
    eigvals : ndarray, shape (n,)
        Eigenvalues in descending order, clamped at zero.
    rank_tol : float
        Relative cutoff; eigenvalues at or below ``rank_tol * eigvals.max()``
        are treated as zero and skipped in every inverse.
    """

    eigvecs: np.ndarray
    eigvals: np.ndarray
    rank_tol: float = DEFAULT_RANK_TOL

    @property
    def n(self):
        return self.eigvals.shape[0]

    @property
    def active(self):
        """Boolean mask of eigenvalues treated as non-zero."""
        top = self.eigvals[0] if self.eigvals.size else 0.0
        if top <= 0:
            return np.zeros(self.n, dtype=bool)
        return self.eigvals > self.rank_tol * top

    @property
    def rank(self):
        return int(self.active.sum())

    @property
    def full_rank(self):
        return self.rank == self.n

    def reduced(self):
        """Return ``(U_k, d_k)`` restricted to the active eigenpairs."""
        mask = self.active
        return self.eigvecs[:, mask], self.eigvals[mask]


def sym_eigen(G, rank_tol=DEFAULT_RANK_TOL):
    """
    Eigendecomposition of a symmetric positive semidefinite matrix.

    Negative eigenvalues are treated as round-off and clamped to zero.

    Raises
    ------
    DataError
        If ``G`` is not square or not symmetric to within 1e-10 (relative to
        its largest entry).
    numpy.linalg.LinAlgError
        If the eigensolver fails to converge.
    """
    G = np.asarray(G, dtype=np.float64)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise DataError(f"Gram matrix must be square, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise DataError("Gram matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(G).max(initial=0.0)))
    if np.abs(G - G.T).max(initial=0.0) > 1e-10 * scale:
        raise DataError("Gram matrix is not symmetric")
    if rank_tol < 0:
        raise ValueError("rank_tol must be nonnegative")
    d, U = np.linalg.eigh(G)
    order = np.argsort(d, kind="stable")[::-1]
    d = np.clip(d[order], 0.0, None)
    return EigenSystem(eigvecs=U[:, order], eigvals=d, rank_tol=rank_tol)


def eigen_of(X, rank_tol=DEFAULT_RANK_TOL):
    """Shorthand for ``sym_eigen(row_gram(X))``."""
    return sym_eigen(row_gram(X), rank_tol=rank_tol)


def _check_dual_args(X, y, r, eig):
    X = as_design(X, min_rows=1)
    y = as_response(y, X.shape[0])
    if not np.isfinite(r) or r < 0:
        raise ValueError(f"ridge penalty must be a finite nonnegative number, got {r}")
    if eig.n != X.shape[0]:
        raise DataError(f"eigensystem has size {eig.n}, design has {X.shape[0]} rows")
    return X, y


def _dual_weights(y, r, eig, power):
    # Returns U_k diag(d_k^power / (d_k + r)) U_k^T y.
    U, d = eig.reduced()
    w = d**power / (d + r)
    return U @ (w * (U.T @ y))


def ridge_dual(X, y, r, eig):
    """
    Ridge coefficients ``X.T @ inv(X @ X.T + r I) @ y`` via the eigensystem.

    At ``r = 0`` only the active eigenpairs are inverted, which gives the
    minimum-norm least-squares (HOLP) solution.

    Parameters
    ----------
    X : array_like, shape (n, p)
    y : array_like, shape (n,)
    r : float
        Nonnegative penalty.
    eig : EigenSystem
        Decomposition of ``X @ X.T``.

    Returns
    -------
    ndarray, shape (p,)
    """
    X, y = _check_dual_args(X, y, r, eig)
    return X.T @ _dual_weights(y, r, eig, power=0)


def ridge_primal(X, y, r):
    """Ridge coefficients ``inv(X.T @ X + r I) @ X.T @ y``; costs O(p^3)."""
    X = as_design(X, min_rows=1)
    y = as_response(y, X.shape[0])
    if not np.isfinite(r) or r <= 0:
        raise ValueError(f"primal ridge needs a positive penalty, got {r}")
    A = X.T @ X
    A[np.diag_indices_from(A)] += r
    factor = scipy.linalg.cho_factor(A, lower=False, check_finite=False)
    return scipy.linalg.cho_solve(factor, X.T @ y, check_finite=False)


def fitted_response(X, y, r, eig):
    """
    Ridge fitted values ``X @ ridge_dual(X, y, r, eig)`` without forming the coefficients.

    Computed as ``U D (D + r I)^-1 U.T y`` in O(n^2).
    """
    _, y = _check_dual_args(X, y, r, eig)
    return _dual_weights(y, r, eig, power=1)
