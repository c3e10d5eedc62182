"""
Monte Carlo screening study driven by a YAML (or JSON) manifest.

Manifest schema::

    grid:                    # every combination is one cell
      n: [200]
      p: [1000]
      rho: [0.6]
      p0: [6]
      r2: [0.5]
    replicates: 100          # B per cell
    seed: 2024               # base seed
    methods: [air-holp, ridge-holp, sis]   # also holp, ridge-holp@<r>
    ridge_r: 10              # penalty used by plain "ridge-holp"
    standardize: true
    airholp: {r0: 10, c: 1000, delta: 0.01, max_iter: 10}
    out_dir: results         # optional; the CLI flag overrides it

Replicate b of every cell uses seed ``replicate_seed(seed, b)``, so cells
sharing (n, p, rho) share their designs, as in a paired comparison.
"""

import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Dict, List, Optional, Tuple

import numpy as np
import yaml

from .airholp import AirHolpConfig, air_holp
from .linalg import eigen_of, standardize
from .metrics import BatchOutcome, sure_screening_probability, true_positions
from .screening import resolve_threshold, screen_holp, screen_ridge_holp, screen_sis
from .simulate import SimSetting, gen_dataset, replicate_seed

BASE_METHODS = ("sis", "holp", "ridge-holp", "air-holp")
GRID_KEYS = ("n", "p", "rho", "p0", "r2")
_TOP_KEYS = {"grid", "replicates", "seed", "methods", "ridge_r", "standardize", "airholp", "out_dir"}


class ManifestError(ValueError):
    """Invalid manifest; the message carries the line number when known."""


@dataclass(frozen=True)
class RunManifest:
    n: Tuple[int, ...]
    p: Tuple[int, ...]
    rho: Tuple[float, ...]
    p0: Tuple[int, ...]
    r2: Tuple[float, ...]
    replicates: int = 100
    seed: int = 0
    methods: Tuple[str, ...] = ("air-holp", "ridge-holp", "sis")
    ridge_r: float = 10.0
    standardize: bool = True
    airholp: AirHolpConfig = field(default_factory=AirHolpConfig)
    out_dir: Optional[str] = None

    def cells(self):
        """Cartesian product of the grid as ``(n, p, rho, p0, r2)`` tuples."""
        return list(itertools.product(self.n, self.p, self.rho, self.p0, self.r2))


def parse_method(name, ridge_r=10.0):
    """Split ``"ridge-holp@50"`` into ``("ridge-holp", 50.0)``."""
    base, _, arg = str(name).partition("@")
    if base not in BASE_METHODS:
        raise ValueError(f"unknown method {name!r}; choose from {', '.join(BASE_METHODS)}")
    if base != "ridge-holp":
        if arg:
            raise ValueError(f"method {base} takes no penalty")
        return base, None
    r = float(arg) if arg else float(ridge_r)
    if r < 0:
        raise ValueError(f"ridge penalty must be nonnegative in {name!r}")
    return base, r


# ---------------------------------------------------------------------------
# Manifest loading with line-precise errors
# ---------------------------------------------------------------------------

def _key_lines(text):
    """Map dotted key paths to 1-based line numbers using the YAML node tree."""
    lines = {}

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for key, value in node.value:
                path = f"{prefix}.{key.value}" if prefix else str(key.value)
                lines[path] = key.start_mark.line + 1
                walk(value, path)

    try:
        walk(yaml.compose(text), "")
    except yaml.YAMLError:
        pass
    return lines


def _fail(lines, path, message):
    line = lines.get(path)
    where = f"line {line}: " if line else ""
    raise ManifestError(f"{where}{path}: {message}")


def _as_list(value, path, lines, kind):
    values = value if isinstance(value, list) else [value]
    if not values:
        _fail(lines, path, "must not be empty")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            _fail(lines, path, f"expected numbers, got {v!r}")
        if kind is int:
            if float(v) != int(v):
                _fail(lines, path, f"expected integers, got {v!r}")
            v = int(v)
        out.append(kind(v))
    return tuple(out)


def parse_manifest(text):
    """Parse and validate manifest text into a RunManifest."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}: " if mark is not None else ""
        raise ManifestError(f"{where}malformed manifest: {exc}") from None
    lines = _key_lines(text)
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a mapping")
    for key in raw:
        if key not in _TOP_KEYS:
            _fail(lines, str(key), "unknown field")
    grid = raw.get("grid")
    if not isinstance(grid, dict):
        _fail(lines, "grid", "required mapping with n, p, rho, p0, r2")
    for key in grid:
        if key not in GRID_KEYS:
            _fail(lines, f"grid.{key}", "unknown grid field")
    values = {}
    for key in GRID_KEYS:
        if key not in grid:
            _fail(lines, "grid", f"missing {key}")
        kind = int if key in ("n", "p", "p0") else float
        values[key] = _as_list(grid[key], f"grid.{key}", lines, kind)

    checks = {
        "n": (lambda v: v >= 2, "must be >= 2"),
        "p": (lambda v: v >= 1, "must be >= 1"),
        "rho": (lambda v: 0 <= v < 1, "must lie in [0, 1)"),
        "p0": (lambda v: v >= 1, "must be >= 1"),
        "r2": (lambda v: 0 < v < 1, "must lie in (0, 1)"),
    }
    for key, (ok, msg) in checks.items():
        for v in values[key]:
            if not ok(v):
                _fail(lines, f"grid.{key}", f"{v} {msg}")
    if max(values["p0"]) > min(values["p"]):
        _fail(lines, "grid.p0", "every p0 must be <= every p")

    kwargs = dict(values)
    if "replicates" in raw:
        reps = raw["replicates"]
        if isinstance(reps, bool) or not isinstance(reps, int) or reps < 1:
            _fail(lines, "replicates", f"must be a positive integer, got {reps!r}")
        kwargs["replicates"] = reps
    if "seed" in raw:
        seed = raw["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            _fail(lines, "seed", f"must be a nonnegative 64-bit integer, got {seed!r}")
        kwargs["seed"] = seed
    if "ridge_r" in raw:
        r = raw["ridge_r"]
        if isinstance(r, bool) or not isinstance(r, (int, float)) or r < 0:
            _fail(lines, "ridge_r", f"must be a nonnegative number, got {r!r}")
        kwargs["ridge_r"] = float(r)
    if "methods" in raw:
        methods = raw["methods"]
        if not isinstance(methods, list) or not methods:
            _fail(lines, "methods", "must be a non-empty list")
        for m in methods:
            try:
                parse_method(m)
            except ValueError as exc:
                _fail(lines, "methods", str(exc))
        kwargs["methods"] = tuple(str(m) for m in methods)
    if "standardize" in raw:
        if not isinstance(raw["standardize"], bool):
            _fail(lines, "standardize", "must be true or false")
        kwargs["standardize"] = raw["standardize"]
    if "airholp" in raw:
        over = raw["airholp"]
        if not isinstance(over, dict):
            _fail(lines, "airholp", "must be a mapping")
        allowed = {"r0", "c", "m", "delta", "max_iter"}
        for key in over:
            if key not in allowed:
                _fail(lines, f"airholp.{key}", "unknown field")
        try:
            kwargs["airholp"] = AirHolpConfig(**over)
        except (TypeError, ValueError) as exc:
            _fail(lines, "airholp", str(exc))
    if "out_dir" in raw and raw["out_dir"] is not None:
        kwargs["out_dir"] = str(raw["out_dir"])
    return RunManifest(**kwargs)


def load_manifest(path):
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def preset_text(name):
    """Raw text of a bundled manifest (``full`` or ``desk``)."""
    try:
        return resources.files("airscreen.presets").joinpath(f"{name}.yaml").read_text("utf-8")
    except FileNotFoundError:
        raise ManifestError(f"no preset named {name!r}") from None


def load_preset(name):
    return parse_manifest(preset_text(name))


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def screen_replicate(setting, methods, ridge_r=10.0, standardize_x=True, config=None):
    """
    Run every method on one simulated dataset.

    Returns
    -------
    dict
        ``method -> (positions of true features, iterations or None)``; the
        eigendecomposition is shared by the dual-form methods.
    """
    config = config or AirHolpConfig()
    ds = gen_dataset(setting)
    X, y = ds.X, ds.y
    if standardize_x:
        X, _ = standardize(X)
        y = y - y.mean()
    m = resolve_threshold(setting.n, setting.p, config.m)
    eig = None
    out = {}
    for name in methods:
        base, r = parse_method(name, ridge_r)
        if base != "sis" and eig is None:
            eig = eigen_of(X)
        iters = None
        if base == "sis":
            res = screen_sis(X, y, m=m)
        elif base == "holp":
            res = screen_holp(X, y, eig=eig, m=m)
        elif base == "ridge-holp":
            res = screen_ridge_holp(X, y, r, eig=eig, m=m)
        else:
            trace = air_holp(X, y, replace(config, m=m), eig=eig)
            res, iters = trace.final, (trace.iterations, trace.converged)
        out[name] = (true_positions(res, ds.true_idx), iters)
    return out


@dataclass
class CellOutcome:
    cell: Tuple[int, int, float, int, float]
    m: int
    positions: Dict[str, List[np.ndarray]]
    iterations: Dict[str, List[Tuple[int, bool]]]

    def batch(self, method):
        return BatchOutcome(np.vstack(self.positions[method]), self.m)


def _run_cell(args):
    cell, manifest = args
    n, p, rho, p0, r2 = cell
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        m = resolve_threshold(n, p, manifest.airholp.m)
        positions = {name: [] for name in manifest.methods}
        iterations = {name: [] for name in manifest.methods}
        for b in range(manifest.replicates):
            setting = SimSetting(n, p, rho, p0, r2, replicate_seed(manifest.seed, b))
            res = screen_replicate(setting, manifest.methods, manifest.ridge_r,
                                   manifest.standardize, manifest.airholp)
            for name, (pos, iters) in res.items():
                positions[name].append(pos)
                if iters is not None:
                    iterations[name].append(iters)
    return CellOutcome(cell, m, positions, iterations)


def run_study(manifest, workers=1):
    """Run every cell of the manifest; results are in grid order regardless of ``workers``."""
    jobs = [(cell, manifest) for cell in manifest.cells()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_cell, jobs))
    return [_run_cell(job) for job in jobs]


SUMMARY_COLUMNS = ("n", "p", "rho", "p0", "r2", "method", "m", "B", "ssp",
                   "mean_threshold", "median_threshold", "q1_threshold", "q3_threshold",
                   "median_iterations", "converged_fraction")


def summary_rows(outcomes):
    rows = []
    for out in outcomes:
        n, p, rho, p0, r2 = out.cell
        for method in out.positions:
            batch = out.batch(method)
            th = batch.thresholds
            q1, med, q3 = np.percentile(th, [25, 50, 75])
            iters = out.iterations.get(method) or []
            rows.append({
                "n": n, "p": p, "rho": rho, "p0": p0, "r2": r2, "method": method,
                "m": out.m, "B": batch.B, "ssp": sure_screening_probability(batch),
                "mean_threshold": float(th.mean()), "median_threshold": float(med),
                "q1_threshold": float(q1), "q3_threshold": float(q3),
                "median_iterations": float(np.median([i for i, _ in iters])) if iters else None,
                "converged_fraction": float(np.mean([c for _, c in iters])) if iters else None,
            })
    return rows


def replicate_rows(outcomes):
    rows = []
    for out in outcomes:
        n, p, rho, p0, r2 = out.cell
        for method, per_rep in out.positions.items():
            for b, pos in enumerate(per_rep):
                rows.append({"n": n, "p": p, "rho": rho, "p0": p0, "r2": r2,
                             "method": method, "replicate": b,
                             "threshold": int(pos.max()),
                             "positions": " ".join(str(int(s)) for s in pos)})
    return rows

