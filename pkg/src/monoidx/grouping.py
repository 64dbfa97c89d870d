"""Group-and-average estimator of the index of increase.

Raw noisy increments swamp the signal: the ungrouped index of a densely
sampled noisy path tends to 1/2. Averaging ``N`` consecutive observations
into each of ``M ~ n**alpha`` groups shrinks the noise by ``sqrt(N)`` while
keeping enough resolution to follow the function. For ``0 < alpha < 1/3``
the grouped index is consistent, with error of order
``n**-min(alpha * gamma, (1 - 3 alpha) / 2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import IndexValue, SampledSeries, _ratio
from .errors import InvalidAlpha, InvalidGamma, InvalidGroupSize, PlanMismatch, TooFewPoints

__all__ = [
    "GroupingPlan",
    "RateExponents",
    "plan_groups",
    "group_average",
    "grouped_index",
    "grouped_index_values",
    "alpha_max",
    "rate_exponents",
    "alpha_for_group_size",
]


@dataclass(frozen=True)
class GroupingPlan:
    """Contiguous layout of ``n`` samples into ``M`` groups of ``N``.

    The last ``dropped = n - M * N`` observations (fewer than ``M``) are
    not used.
    """

    alpha: float
    n: int
    M: int
    N: int
    dropped: int

    def group_slice(self, j: int) -> slice:
        """0-based sample range of group ``j`` (0-based)."""
        return slice(j * self.N, (j + 1) * self.N)


@dataclass(frozen=True)
class RateExponents:
    delta: float
    rho: float
    beta: float


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in (0, 1), got {alpha}")


def n_groups(n: int, alpha: float) -> int:
    """``max(2, floor(n**alpha))`` with a guard against powers landing a hair
    below an integer (1000**(1/3) evaluates to 9.999...)."""
    x = n ** alpha
    m = math.floor(x)
    if x - m > 1.0 - 1e-9:
        m += 1
    return max(2, m)


def plan_groups(n: int, alpha: float) -> GroupingPlan:
    _check_alpha(alpha)
    if n < 4:
        raise TooFewPoints("grouping needs at least 4 observations")
    M = n_groups(n, alpha)
    N = n // M
    return GroupingPlan(alpha=alpha, n=n, M=M, N=N, dropped=n - M * N)


def group_average(series: SampledSeries, plan: GroupingPlan) -> SampledSeries:
    if plan.n != len(series):
        raise PlanMismatch(f"plan is for n={plan.n}, series has {len(series)} points")
    t = _backend.group_means(series.t, plan.M, plan.N)
    y = _backend.group_means(series.y, plan.M, plan.N)
    return SampledSeries(t, y)


def grouped_index_values(y, alpha: float) -> IndexValue:
    """Grouped index for a bare value sequence already in time order.

    Used on bootstrap resamples, which may repeat time points and so are not
    valid :class:`SampledSeries`.
    """
    _check_alpha(alpha)
    y = np.asarray(y, dtype=np.float64)
    plan = plan_groups(y.size, alpha)
    return _ratio(*_backend.grouped_increment_sums(y, plan.M, plan.N))


def grouped_index(series: SampledSeries, alpha: float) -> IndexValue:
    """Index of increase of the ``M = max(2, floor(n**alpha))`` group means.

    Raises
    ------
    InvalidAlpha
        If ``alpha`` is outside (0, 1).
    DegenerateSeries
        If all group means are equal.
    """
    return grouped_index_values(series.y, alpha)


def alpha_max(gamma: float) -> float:
    """Grouping exponent that balances the deterministic and noise rates."""
    if not 0.0 < gamma <= 1.0:
        raise InvalidGamma(f"gamma must lie in (0, 1], got {gamma}")
    return 1.0 / (3.0 + 2.0 * gamma)


def rate_exponents(alpha: float, gamma: float) -> RateExponents:
    _check_alpha(alpha)
    if not 0.0 < gamma <= 1.0:
        raise InvalidGamma(f"gamma must lie in (0, 1], got {gamma}")
    delta = alpha * gamma
    rho = (1.0 - 3.0 * alpha) / 2.0
    return RateExponents(delta=delta, rho=rho, beta=min(delta, rho))


def alpha_for_group_size(n: int, N: int) -> float:
    """Exponent implied by averaging groups of ``N`` out of ``n`` samples."""
    if not 2 <= N <= n / 2:
        raise InvalidGroupSize(f"group size must satisfy 2 <= N <= n/2, got N={N}, n={n}")
    return 1.0 - math.log(N) / math.log(n)
