"""
Command-line interface.

    airscreen screen   --x X.csv --y y.csv [--method air-holp] [--multiple-r 8]
    airscreen simulate --manifest study.yaml --out-dir results
    airscreen bench    --size 100,1000 --size 100,2000 --method ridge-holp

Exit codes: 0 success, 2 usage error, 3 data error.
"""

import argparse
import csv
import datetime
import json
import shlex
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from ._validation import DataError
from .airholp import AirHolpConfig
from .api import METHODS, screen
from .bench import METHODS as BENCH_METHODS
from .bench import SWEEP_PRESET, run_bench, summarize, write_records
from .csvio import read_matrix, read_response
from .metrics import multiple_r_curve
from .study import (
    SUMMARY_COLUMNS, ManifestError, load_manifest, load_preset, replicate_rows, run_study,
    summary_rows,
)

EXIT_USAGE = 2
EXIT_DATA = 3


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".10g")
    return str(value)


def _provenance(argv, seed, timestamp):
    info = {"version": f"airscreen {__version__}",
            "command": shlex.join(["airscreen", *argv]),
            "seed": seed}
    if timestamp:
        info["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return info


def _header_lines(prov):
    return [f"{key}: {value}" for key, value in prov.items()]


def _write_table(path, columns, rows, prov):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for line in _header_lines(prov):
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])


def _write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _size(text):
    try:
        n, p = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,p got {text!r}") from None
    if n < 2 or p < 1:
        raise argparse.ArgumentTypeError(f"need n >= 2 and p >= 1, got {text!r}")
    return n, p


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_screen(args, argv):
    names, X = read_matrix(args.x)
    y = read_response(args.y)
    if y.shape[0] != X.shape[0]:
        raise DataError(f"{args.y} has {y.shape[0]} values but {args.x} has {X.shape[0]} rows")
    config = AirHolpConfig(r0=args.r0, c=args.c, delta=args.delta, max_iter=args.max_iter)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result, trace = screen(X, y, method=args.method, r=args.r, m=args.m, config=config,
                               standardize=not args.no_standardize)
    doc = {
        "provenance": _provenance(argv, None, not args.no_timestamp),
        "method": result.method,
        "n": int(X.shape[0]), "p": int(X.shape[1]), "m": result.m,
        "standardized": not args.no_standardize,
        "warnings": [str(w.message) for w in caught],
        "screened": [names[j] for j in result.screened],
    }
    if trace is not None:
        doc["penalty_trace"] = {
            "penalties": trace.penalties, "converged": trace.converged,
            "iterations": trace.iterations, "objective_values": trace.objective_values,
        }
    doc["ranking"] = [{"rank": k + 1, "feature": names[j], "index": int(j),
                       "score": float(result.scores[j])}
                      for k, j in enumerate(result.ranking)]
    if args.multiple_r:
        Xs = X[:, result.screened]
        doc["multiple_r"] = [{"k": k, "R": R, "features": [names[result.screened[i]] for i in subset]}
                             for k, R, subset in multiple_r_curve(y, Xs, args.multiple_r)]

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"screen_{args.method}.json"
    _write_json(path, doc)
    print(path)
    return 0


def cmd_simulate(args, argv):
    if args.manifest.startswith("preset:"):
        manifest = load_preset(args.manifest.split(":", 1)[1])
    else:
        manifest = load_manifest(args.manifest)
    if args.seed is not None:
        manifest = replace(manifest, seed=args.seed)
    out = Path(args.out_dir or manifest.out_dir or "results")
    out.mkdir(parents=True, exist_ok=True)
    outcomes = run_study(manifest, workers=args.workers)
    prov = _provenance(argv, manifest.seed, not args.no_timestamp)
    _write_table(out / "summary.csv", SUMMARY_COLUMNS, summary_rows(outcomes), prov)
    written = [out / "summary.csv"]
    if args.dump_replicates:
        cols = ("n", "p", "rho", "p0", "r2", "method", "replicate", "threshold", "positions")
        _write_table(out / "replicates.csv", cols, replicate_rows(outcomes), prov)
        written.append(out / "replicates.csv")
    for path in written:
        print(path)
    return 0


def bench_plan(sizes, preset=None, methods=None):
    """Expand ``--size``/``--preset``/``--method`` into the sizes and methods to time."""
    sizes = list(sizes or [])
    if preset == "sweep":
        sizes.extend(SWEEP_PRESET)
    if not sizes:
        raise _Usage("bench needs at least one --size n,p or --preset sweep")
    return sizes, tuple(methods or BENCH_METHODS)


def cmd_bench(args, argv):
    sizes, methods = bench_plan(args.size, args.preset, args.method)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        records = run_bench(sizes, methods=methods, reps=args.reps, seed=args.seed,
                            parallel=args.parallel)
    rows = summarize(records) if records else []
    prov = _provenance(argv, args.seed, not args.no_timestamp)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_records(records, out / "bench_records.csv", _header_lines(prov))
    cols = ("method", "n", "p", "reps", "trimmed_mean_log_ms", "median_ms", "min_ms", "max_ms")
    _write_table(out / "bench_summary.csv", cols, rows, prov)
    _write_json(out / "bench_summary.json", {"provenance": prov, "summary": rows})
    for name in ("bench_records.csv", "bench_summary.csv", "bench_summary.json"):
        print(out / name)
    return 0


class _Usage(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="airscreen", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"airscreen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("screen", help="screen features of a CSV dataset")
    s.add_argument("--x", required=True, help="design matrix CSV with a header row")
    s.add_argument("--y", required=True, help="single-column response CSV")
    s.add_argument("--method", choices=METHODS, default="air-holp")
    s.add_argument("--r", type=float, default=10.0, help="ridge-holp penalty")
    s.add_argument("--r0", type=float, default=10.0, help="air-holp initial penalty")
    s.add_argument("--c", type=float, default=1000.0, help="penalty bound is c*sqrt(n)")
    s.add_argument("--delta", type=float, default=0.01, help="relative change stopping rule")
    s.add_argument("--max-iter", type=int, default=10)
    s.add_argument("--m", type=int, default=None, help="screening size, default ceil(n/ln n)")
    s.add_argument("--no-standardize", action="store_true")
    s.add_argument("--multiple-r", type=int, default=0, metavar="K",
                   help="report the best multiple R for model sizes 1..K")
    s.add_argument("--out-dir", default=".")
    s.add_argument("--no-timestamp", action="store_true")
    s.set_defaults(func=cmd_screen)

    m = sub.add_parser("simulate", help="run a simulation study from a manifest")
    m.add_argument("--manifest", required=True, help="YAML/JSON manifest or preset:<name>")
    m.add_argument("--out-dir", default=None)
    m.add_argument("--seed", type=int, default=None, help="override the manifest base seed")
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--dump-replicates", action="store_true")
    m.add_argument("--no-timestamp", action="store_true")
    m.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bench", help="time the screeners over (n, p) sizes")
    b.add_argument("--size", type=_size, action="append", metavar="N,P")
    b.add_argument("--preset", choices=("sweep",), default=None,
                   help="sweep: n=100, p=1000..16000 doubling")
    b.add_argument("--method", choices=BENCH_METHODS, action="append")
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--parallel", action="store_true", help="allow multithreaded BLAS")
    b.add_argument("--out-dir", default=".")
    b.add_argument("--no-timestamp", action="store_true")
    b.set_defaults(func=cmd_bench)
    return parser


def _data_error(message):
    print(json.dumps({"error": "data", "message": message}), file=sys.stderr)
    return EXIT_DATA


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except _Usage as exc:
        parser.error(str(exc))
    except (DataError, ManifestError, OSError) as exc:
        return _data_error(str(exc))
    except ValueError as exc:
        # Out-of-range options such as a negative penalty.
        print(f"airscreen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
