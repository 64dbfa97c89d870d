"""Index of increase for sampled paths and smooth functions.

The index is the share of a path's total variation contributed by its
upward moves::

    I = sum(d_i)_+ / sum |d_i|,   d_i = y[i] - y[i-1]

Its numerator is also the total-variation distance from the path to the
nearest non-increasing path, which :func:`monotone_projection` constructs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DegenerateSeries, InvalidSeries

__all__ = [
    "SampledSeries",
    "IndexValue",
    "ProjectionResult",
    "increments",
    "index_numeric",
    "exact_index",
    "monotone_projection",
]


@dataclass(frozen=True, eq=False)
class SampledSeries:
    """Time-ordered samples ``(t, y)`` with ``t`` strictly increasing in [0, 1]."""

    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(self.t, dtype=np.float64)
        y = np.ascontiguousarray(self.y, dtype=np.float64)
        if t.ndim != 1 or y.ndim != 1:
            raise InvalidSeries("t and y must be one-dimensional")
        if t.size != y.size:
            raise InvalidSeries(f"t has {t.size} points but y has {y.size}")
        if t.size < 2:
            raise InvalidSeries("a series needs at least 2 points")
        if not (np.isfinite(t).all() and np.isfinite(y).all()):
            raise InvalidSeries("t and y must be finite")
        if t[0] < 0.0 or t[-1] > 1.0:
            raise InvalidSeries("t must lie in [0, 1]")
        if not (np.diff(t) > 0).all():
            raise InvalidSeries("t must be strictly increasing")
        t.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_values(cls, y) -> "SampledSeries":
        """Place ``y`` on the equispaced grid ``t_i = i / (n - 1)``."""
        y = np.asarray(y, dtype=np.float64)
        return cls(unit_grid(y.size), y)

    def __len__(self):
        return self.y.size

    def head(self, k: int) -> "SampledSeries":
        return SampledSeries(self.t[:k], self.y[:k])

    def __eq__(self, other):
        if not isinstance(other, SampledSeries):
            return NotImplemented
        return np.array_equal(self.t, other.t) and np.array_equal(self.y, other.y)

    __hash__ = None


def unit_grid(n: int) -> np.ndarray:
    """Equispaced design points (i - 1) / (n - 1), i = 1..n."""
    return np.arange(n, dtype=np.float64) / (n - 1)


@dataclass(frozen=True)
class IndexValue:
    """An index of increase together with the two sums that define it."""

    value: float
    numerator: float
    denominator: float

    def __float__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    projected: np.ndarray
    distance: float


def increments(series: SampledSeries) -> np.ndarray:
    return np.diff(series.y)


def _ratio(pos: float, tv: float) -> IndexValue:
    if not tv > 0.0:
        raise DegenerateSeries("total variation is zero; the index is undefined")
    return IndexValue(value=pos / tv, numerator=pos, denominator=tv)


def index_from_values(y) -> IndexValue:
    """Index of increase of the raw value sequence ``y`` (no time axis)."""
    pos, tv = _backend.increment_sums(y)
    return _ratio(pos, tv)


def index_numeric(series: SampledSeries) -> IndexValue:
    """Proportion of upward movement among all movement of the sampled path.

    Zero increments count toward neither sum.

    Raises
    ------
    DegenerateSeries
        If every increment is zero.
    """
    return index_from_values(series.y)


def exact_index(spec, resolution: int = 1_000_000) -> IndexValue:
    """Index of increase of a bank function from its closed-form derivative.

    Both integrals ``int (h')_+`` and ``int |h'|`` over [0, 1] use the
    composite midpoint rule on ``resolution`` equal cells.
    """
    if resolution < 1000:
        raise ValueError("resolution must be at least 1000")
    mid = (np.arange(resolution, dtype=np.float64) + 0.5) / resolution
    d = spec.deriv(mid)
    pos = float(np.add.reduce(np.maximum(d, 0.0))) / resolution
    tv = float(np.add.reduce(np.abs(d))) / resolution
    if tv <= 1e-300:
        raise DegenerateSeries(f"{spec.id} has zero total variation")
    return IndexValue(value=pos / tv, numerator=pos, denominator=tv)


def monotone_projection(series: SampledSeries) -> ProjectionResult:
    """Nearest non-increasing path in total-variation distance.

    Keeps every downward step, flattens every upward one and starts at
    ``y[0]``. The distance to it equals the sum of positive increments, and
    no non-increasing path is closer.
    """
    d = np.diff(series.y)
    steps = np.minimum(d, 0.0)
    projected = np.empty_like(series.y)
    projected[0] = series.y[0]
    projected[1:] = series.y[0] + np.cumsum(steps)
    distance = float(np.add.reduce(np.maximum(d, 0.0)))
    return ProjectionResult(projected=projected, distance=distance)
