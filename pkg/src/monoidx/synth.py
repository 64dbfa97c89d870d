"""Noisy observations ``Y_i = h(t_i) + sigma * z_i`` on the unit grid."""
from __future__ import annotations

from dataclasses import dataclass

from .core import SampledSeries, unit_grid
from .rng import check_seed, standard_normals

__all__ = ["NoiseSpec", "generate_series"]


@dataclass(frozen=True)
class NoiseSpec:
    """I.i.d. centred Gaussian measurement error with standard deviation ``sigma``."""

    sigma: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not self.sigma >= 0.0:
            raise ValueError("sigma must be non-negative")
        check_seed(self.seed)


def generate_series(spec, n: int, noise: NoiseSpec, workers: int = 1) -> SampledSeries:
    """Sample ``spec`` on ``t_i = (i - 1) / (n - 1)`` and add Gaussian noise.

    The error at index ``i`` depends only on ``(noise.seed, i)``, so series
    of different lengths share their leading errors and the output does not
    depend on ``workers``. ``sigma = 0`` gives the noise-free samples.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    t = unit_grid(n)
    y = spec.eval(t)
    if noise.sigma > 0.0:
        y = y + noise.sigma * standard_normals(noise.seed, n, workers=workers)
    return SampledSeries(t, y)
