"""
Ridge in the dual
=================

With p much larger than n, the ridge coefficients can be computed from the
n x n row Gram matrix instead of the p x p one. Both routes give the same
vector.
"""

import time

import numpy as np

from airscreen import eigen_of, ridge_dual, ridge_primal

rng = np.random.default_rng(0)
n, p = 50, 3000
X = rng.standard_normal((n, p))
y = X[:, :5].sum(axis=1) + rng.standard_normal(n)

t0 = time.perf_counter()
beta_primal = ridge_primal(X, y, r=10.0)
t1 = time.perf_counter()
beta_dual = ridge_dual(X, y, 10.0, eigen_of(X))
t2 = time.perf_counter()

print("max abs difference:", np.abs(beta_primal - beta_dual).max())
print("primal %.1f ms, dual %.1f ms" % ((t1 - t0) * 1e3, (t2 - t1) * 1e3))

# One eigendecomposition serves every penalty.
eig = eigen_of(X)
for r in (0.1, 10.0, 1000.0):
    print(r, np.linalg.norm(ridge_dual(X, y, r, eig)))
