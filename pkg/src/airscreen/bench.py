"""Wall-clock comparison of primal ridge, Ridge-HOLP and Air-HOLP."""

import csv
import statistics
import time
import warnings
from contextlib import nullcontext
from dataclasses import dataclass

import numpy as np
from scipy import stats
from threadpoolctl import threadpool_limits

from .airholp import AirHolpConfig, air_holp
from .linalg import ridge_primal, standardize
from .screening import rank_features, screen_ridge_holp
from .simulate import SimSetting, gen_dataset, replicate_seed

METHODS = ("ridge-primal", "ridge-holp", "air-holp")
PRIMAL_MEMORY_LIMIT = 1 << 30  # bytes for the p x p matrix

# Doubling p-sweep at n = 100.
SWEEP_PRESET = tuple((100, 1000 * 2**k) for k in range(5))


@dataclass(frozen=True)
class BenchRecord:
    method: str
    n: int
    p: int
    rep: int
    ms: float


def _run_primal(X, y):
    beta = ridge_primal(X, y, 10.0)
    return rank_features(beta)


def _runner(method):
    if method == "ridge-primal":
        return _run_primal
    if method == "ridge-holp":
        return lambda X, y: screen_ridge_holp(X, y, 10.0)
    if method == "air-holp":
        config = AirHolpConfig()
        return lambda X, y: air_holp(X, y, config)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def feasible(method, n, p, memory_limit=PRIMAL_MEMORY_LIMIT):
    if method == "ridge-primal":
        return 8 * p * p <= memory_limit
    return 8 * n * p <= memory_limit


def run_bench(grid, methods=METHODS, reps=10, seed=0, parallel=False,
              memory_limit=PRIMAL_MEMORY_LIMIT):
    """
    Time each method on fresh data for every ``(n, p)`` in ``grid``.

    Data are generated and standardized outside the timer. One untimed
    warm-up call precedes the timed replicates of each method and size.
    BLAS runs single-threaded unless ``parallel`` is set. Sizes whose working
    set exceeds ``memory_limit`` are skipped with a warning.

    Returns
    -------
    list of BenchRecord
    """
    if reps < 3:
        raise ValueError(f"need at least 3 replicates, got {reps}")
    runners = {method: _runner(method) for method in methods}
    records = []
    limiter = nullcontext() if parallel else threadpool_limits(limits=1)
    with limiter:
        for n, p in grid:
            data = []
            for rep in range(reps + 1):
                ds = gen_dataset(SimSetting(n, p, 0.6, min(6, p), 0.5, replicate_seed(seed, rep)))
                X, _ = standardize(ds.X)
                data.append((X, ds.y - ds.y.mean()))
            for method, run in runners.items():
                if not feasible(method, n, p, memory_limit):
                    warnings.warn(f"skipping {method} at n={n}, p={p}: exceeds memory limit",
                                  RuntimeWarning, stacklevel=2)
                    continue
                run(*data[0])
                for rep in range(1, reps + 1):
                    X, y = data[rep]
                    start = time.perf_counter()
                    run(X, y)
                    ms = (time.perf_counter() - start) * 1e3
                    records.append(BenchRecord(method, n, p, rep - 1, max(ms, 1e-6)))
    return records


def summarize(records):
    """
    Per ``(method, n, p)``: 10%-trimmed mean of natural-log milliseconds, median, min, max.

    With 10 replicates the trim drops exactly the fastest and the slowest.
    """
    if not records:
        raise ValueError("no benchmark records to summarize")
    groups = {}
    for rec in records:
        groups.setdefault((rec.method, rec.n, rec.p), []).append(rec.ms)
    rows = []
    for (method, n, p), times in groups.items():
        rows.append({
            "method": method, "n": n, "p": p, "reps": len(times),
            "trimmed_mean_log_ms": float(stats.trim_mean(np.log(times), 0.1)),
            "median_ms": statistics.median(times),
            "min_ms": min(times), "max_ms": max(times),
        })
    return rows


def loglog_slope(rows, method, n):
    """Least-squares slope of log time against log p for one method at fixed n."""
    pts = sorted((r["p"], r["median_ms"]) for r in rows if r["method"] == method and r["n"] == n)
    if len(pts) < 2:
        raise ValueError("need at least two sizes to fit a slope")
    lp = np.log([q for q, _ in pts])
    lt = np.log([t for _, t in pts])
    return float(np.polyfit(lp, lt, 1)[0])


def write_records(records, path, header_lines=()):
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "n", "p", "rep", "ms"])
        for r in records:
            w.writerow([r.method, r.n, r.p, r.rep, f"{r.ms:.6f}"])
