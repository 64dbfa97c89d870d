"""m-out-of-n bootstrap for the grouped index of increase.

Each replicate draws ``m`` observations with replacement (``m ~ 2 sqrt(n)``
by default), restores time order, regroups with ``M = max(2, floor(m**alpha))``
and recomputes the index. The 2.5% and 97.5% quantiles of the replicates
form a 95% confidence interval.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .core import SampledSeries
from .errors import InvalidAlpha, ResampleExhausted, TooFewPoints
from .grouping import grouped_index, n_groups
from .rng import BOOTSTRAP, check_seed, stream

__all__ = ["BootstrapReport", "subsample_size", "quantile", "bootstrap_ci"]

MAX_REDRAWS = 100
# tolerated share of replicates still degenerate after redraws
MAX_DEGENERATE_SHARE = 0.01

_CHUNK = 250


@dataclass(frozen=True, eq=False)
class BootstrapReport:
    point_estimate: float
    alpha: float
    replicates: int
    subsample_size: int
    groups: int
    standard_deviation: float
    ci_low: float
    ci_high: float
    distribution: np.ndarray
    redrawn: int = 0
    discarded: int = 0

    def to_dict(self, with_distribution: bool = False):
        out = {
            "point_estimate": self.point_estimate,
            "alpha": self.alpha,
            "replicates": self.replicates,
            "subsample_size": self.subsample_size,
            "groups": self.groups,
            "standard_deviation": self.standard_deviation,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "redrawn": self.redrawn,
            "discarded": self.discarded,
        }
        if with_distribution:
            out["distribution"] = self.distribution.tolist()
        return out


def subsample_size(n: int) -> int:
    """Rule-of-thumb resample size ``round(2 sqrt(n))``, clamped to [8, n]."""
    if n < 16:
        raise TooFewPoints("the m-out-of-n rule needs n >= 16")
    return int(min(max(round(2.0 * math.sqrt(n)), 8), n))


def quantile(values, p: float) -> float:
    """Order-statistic interpolation at 1-based position ``1 + (B - 1) p``."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    if x.size == 0:
        raise ValueError("empty distribution")
    pos = (x.size - 1) * p
    lo = int(math.floor(pos))
    hi = min(lo + 1, x.size - 1)
    frac = pos - lo
    return float(x[lo] + frac * (x[hi] - x[lo]))


def _draw(rng, n, m):
    return np.sort(rng.integers(0, n, size=m))


def _replicates(y, first, count, m, groups, size, seed):
    """Replicates ``first .. first + count - 1`` (NaN where still degenerate)
    and the number of redraws spent."""
    n = y.size
    rngs = [stream(seed, BOOTSTRAP, first + r) for r in range(count)]
    idx = np.stack([_draw(g, n, m) for g in rngs])
    pos, tv = _backend.grouped_increment_sums_rows(y[idx], groups, size)
    values = np.full(count, np.nan)
    ok = tv > 0.0
    values[ok] = pos[ok] / tv[ok]
    redrawn = 0
    for r in np.flatnonzero(~ok):
        for _ in range(MAX_REDRAWS):
            redrawn += 1
            p, a = _backend.grouped_increment_sums(y[_draw(rngs[r], n, m)], groups, size)
            if a > 0.0:
                values[r] = p / a
                break
    return values, redrawn


def bootstrap_ci(
    series: SampledSeries,
    alpha: float,
    B: int = 1000,
    seed: int = 0,
    m: Optional[int] = None,
    workers: int = 1,
) -> BootstrapReport:
    """Point estimate, bootstrap sd and 95% quantile interval of the grouped index.

    Replicate ``r`` uses the random stream keyed by ``(seed, r)``, so the
    report is independent of ``workers``. A replicate whose group means are
    all equal is redrawn up to 100 times.

    Raises
    ------
    DegenerateSeries
        If the full-sample estimate is undefined.
    ResampleExhausted
        If more than 1% of replicates stay degenerate after redraws.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in (0, 1), got {alpha}")
    n = len(series)
    if n < 16:
        raise TooFewPoints("bootstrap needs at least 16 observations")
    if B < 1:
        raise ValueError("B must be positive")
    check_seed(seed)
    m = subsample_size(n) if m is None else int(m)
    if not 4 <= m <= n:
        raise TooFewPoints(f"subsample size must lie in [4, n], got {m}")

    point = grouped_index(series, alpha).value
    groups = n_groups(m, alpha)
    size = m // groups

    chunks = [(s, min(_CHUNK, B - s)) for s in range(0, B, _CHUNK)]

    def run(chunk):
        return _replicates(series.y, chunk[0], chunk[1], m, groups, size, seed)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]

    values = np.concatenate([p[0] for p in parts])
    redrawn = sum(p[1] for p in parts)
    bad = np.isnan(values)
    if bad.sum() > MAX_DEGENERATE_SHARE * B:
        raise ResampleExhausted(f"{int(bad.sum())} of {B} replicates stayed degenerate")
    dist = values[~bad]
    sd = float(np.std(dist, ddof=1)) if dist.size > 1 else 0.0
    return BootstrapReport(
        point_estimate=point,
        alpha=alpha,
        replicates=B,
        subsample_size=m,
        groups=groups,
        standard_deviation=sd,
        ci_low=quantile(dist, 0.025),
        ci_high=quantile(dist, 0.975),
        distribution=dist,
        redrawn=redrawn,
        discarded=int(bad.sum()),
    )
