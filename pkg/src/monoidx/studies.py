"""Batch Monte Carlo experiments on the bank functions.

Each study returns a list of row dicts and can write them as CSV. Output
depends only on the configuration and seeds.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bootstrap import bootstrap_ci
from .core import exact_index
from .errors import InsufficientTrace, InvalidAlpha
from .functions import get_function
from .grouping import grouped_index
from .synth import NoiseSpec, generate_series

__all__ = [
    "StudyConfig",
    "surface_study",
    "convergence_trace",
    "rate_estimate",
    "table_report",
    "write_csv",
    "SURFACE_COLUMNS",
    "TRACE_COLUMNS",
    "TABLE_COLUMNS",
]

SURFACE_COLUMNS = ["fn", "n", "alpha", "seed", "index"]
TRACE_COLUMNS = ["fn", "alpha", "sigma", "n", "seeds", "median_abs_error"]
TABLE_COLUMNS = ["fn", "alpha", "true_value", "point_estimate", "sd", "ci_low", "ci_high",
                 "replicates", "subsample_size"]


@dataclass
class StudyConfig:
    functions: list
    n_grid: list
    alpha_grid: list
    sigma: float = 1.0
    seeds: list = field(default_factory=lambda: list(range(20)))
    outputs: str = "study"
    replicates: int = 1000
    subsample: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        if not (self.functions and self.n_grid and self.alpha_grid and self.seeds):
            raise ValueError("functions, n_grid, alpha_grid and seeds must be non-empty")
        for fn in self.functions:
            get_function(fn)
        for a in self.alpha_grid:
            if not 0.0 < a < 1.0:
                raise InvalidAlpha(f"alpha must lie in (0, 1), got {a}")
        self.n_grid = [int(n) for n in self.n_grid]
        self.alpha_grid = [float(a) for a in self.alpha_grid]
        self.seeds = [int(s) for s in self.seeds]

    @classmethod
    def from_dict(cls, raw: dict) -> "StudyConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**raw)

    @classmethod
    def load(cls, path) -> "StudyConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _reference(spec):
    if spec.reference_index is not None:
        return spec.reference_index
    return exact_index(spec).value


def _map(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def surface_study(config: StudyConfig) -> list:
    """Grouped index over the (n, alpha) grid, one row per function, n, alpha, seed.

    The same noisy sample (per function, n and seed) serves every alpha.
    """
    cells = [(fn, n, seed) for fn in config.functions for n in config.n_grid
             for seed in config.seeds]

    def one(cell):
        fn, n, seed = cell
        series = generate_series(get_function(fn), n, NoiseSpec(config.sigma, seed))
        return [{"fn": fn, "n": n, "alpha": a, "seed": seed,
                 "index": grouped_index(series, a).value} for a in config.alpha_grid]

    by_cell = dict(zip(cells, _map(one, cells, config.workers)))
    rows = []
    for fn in config.functions:
        for n in config.n_grid:
            for i, a in enumerate(config.alpha_grid):
                for seed in config.seeds:
                    rows.append(by_cell[(fn, n, seed)][i])
    return rows


def convergence_trace(fn: str, alpha: float, sigma: float, n_grid: Sequence[int],
                      seeds: Sequence[int], workers: int = 1) -> list:
    """Median over seeds of ``|grouped index - reference index|`` for each n."""
    spec = get_function(fn)
    ref = _reference(spec)
    rows = []
    for n in n_grid:
        def err(seed, n=n):
            series = generate_series(spec, int(n), NoiseSpec(sigma, seed))
            return abs(grouped_index(series, alpha).value - ref)

        errors = _map(err, list(seeds), workers)
        rows.append({"fn": fn, "alpha": alpha, "sigma": sigma, "n": int(n),
                     "seeds": len(errors), "median_abs_error": float(np.median(errors))})
    return rows


def rate_estimate(trace: Sequence[dict]) -> float:
    """Least-squares slope of log(median error) against log(n).

    Only rows with a positive error enter the fit.

    Raises
    ------
    InsufficientTrace
        If fewer than 3 distinct n have a positive error.
    """
    pts = {}
    for row in trace:
        e = row["median_abs_error"]
        if e > 0 and math.isfinite(e):
            pts[int(row["n"])] = e
    if len(pts) < 3:
        raise InsufficientTrace(
            f"need positive errors at >= 3 distinct n, have {len(pts)}")
    ns = np.array(sorted(pts), dtype=np.float64)
    es = np.array([pts[int(n)] for n in ns])
    slope, _ = np.polyfit(np.log(ns), np.log(es), 1)
    return float(slope)


def table_report(fns: Sequence[str], alphas: Sequence[float], sigma: float, n: int,
                 B: int = 1000, seed: int = 0, m: Optional[int] = None,
                 workers: int = 1) -> list:
    """Reference value, point estimate, bootstrap sd and 95% CI per function."""
    if len(alphas) == 1 and len(fns) > 1:
        alphas = list(alphas) * len(fns)
    if len(alphas) != len(fns):
        raise ValueError("give one alpha per function, or a single alpha for all")
    rows = []
    for fn, a in zip(fns, alphas):
        spec = get_function(fn)
        series = generate_series(spec, n, NoiseSpec(sigma, seed))
        rep = bootstrap_ci(series, a, B=B, seed=seed, m=m, workers=workers)
        rows.append({
            "fn": fn,
            "alpha": a,
            "true_value": _reference(spec),
            "point_estimate": rep.point_estimate,
            "sd": rep.standard_deviation,
            "ci_low": rep.ci_low,
            "ci_high": rep.ci_high,
            "replicates": rep.replicates,
            "subsample_size": rep.subsample_size,
        })
    return rows


def write_csv(rows: Sequence[dict], path, columns: Sequence[str]) -> Path:
    """Write rows with ``repr`` floats so a re-read is bit-exact."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row[c]) for c in columns])
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v
