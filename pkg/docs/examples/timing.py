"""
How the screeners scale with p
==============================

Times Ridge-HOLP and Air-HOLP on single-threaded BLAS. At fixed n the
Ridge-HOLP cost is dominated by forming X X^T, so once p is a few thousand
the time grows about linearly in p. The primal ridge solve is shown at one
size for contrast.
"""

from airscreen.bench import loglog_slope, run_bench, summarize

sizes = [(100, 4000), (100, 8000), (100, 16000)]
rows = summarize(run_bench(sizes, methods=("ridge-holp", "air-holp"), reps=5, seed=0))
rows += summarize(run_bench([(100, 2000)], methods=("ridge-primal",), reps=3, seed=0))
for row in rows:
    print("%-12s n=%d p=%5d  median %.1f ms" % (row["method"], row["n"], row["p"], row["median_ms"]))
print("ridge-holp log-log slope: %.2f" % loglog_slope(rows, "ridge-holp", 100))
