"""
Screening a CSV dataset and scoring the screened set
====================================================

Writes a toy expression-style dataset (92 samples, 1288 features), reads it
back, screens it, and reports the best multiple R for small models built
from the screened features.
"""

import csv
import tempfile
from pathlib import Path

import numpy as np

from airscreen import multiple_r_curve, screen
from airscreen.csvio import read_matrix, read_response

rng = np.random.default_rng(1)
n, p = 92, 1288
X = rng.standard_normal((n, p)) + 0.7 * rng.standard_normal((n, 1))
y = 2 * X[:, 17] - X[:, 400] + rng.standard_normal(n)

tmp = Path(tempfile.mkdtemp())
with open(tmp / "X.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["gene%d" % j for j in range(p)])
    w.writerows(X.round(6).tolist())
np.savetxt(tmp / "y.csv", y, header="stage", comments="")

names, X = read_matrix(tmp / "X.csv")
y = read_response(tmp / "y.csv")

result, trace = screen(X, y, method="air-holp")
print("m =", result.m, "final penalty = %.4g" % trace.penalty)
print("top five:", [names[j] for j in result.screened[:5]])

for k, R, subset in multiple_r_curve(y, X[:, result.screened], 3):
    print(k, "%.3f" % R, [names[result.screened[i]] for i in subset])
