"""
Watching Air-HOLP pick its penalty
==================================

Air-HOLP starts from r0 = 10 and alternates between a screened least-squares
fit and a one-dimensional penalty search. The trace records every penalty.
"""

import numpy as np

from airscreen import AirHolpConfig, SimSetting, air_holp, gen_dataset, standardize

ds = gen_dataset(SimSetting(n=200, p=1000, rho=0.6, p0=6, r2=0.5, seed=3))
X, _ = standardize(ds.X)
y = ds.y - ds.y.mean()

trace = air_holp(X, y)
print("penalties:", ["%.4g" % r for r in trace.penalties])
print("converged:", trace.converged, "after", trace.iterations, "iterations")
print("true feature ranks:", trace.final.positions[ds.true_idx])

# A tighter tolerance only adds iterations when the path has not settled.
strict = air_holp(X, y, AirHolpConfig(delta=1e-6, max_iter=20))
print("strict run:", strict.iterations, "iterations, final r = %.4g" % strict.penalty)

# Value of the objective at each accepted penalty.
g = np.array(trace.objective_values)
print(np.round(g, 2))
