"""Eight test functions on [0, 1] with analytic derivatives.

h1..h4 are two trigonometric arcs and two monotone quarter-waves; h5..h8
mix polynomial and trigonometric shapes. Each has a bounded second
derivative, so its derivative is Lipschitz (Hölder exponent 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import SampledSeries, unit_grid
from .errors import UnknownFunction

__all__ = ["FunctionSpec", "BANK", "get_function", "sample_on_grid"]

_PI = np.pi


@dataclass(frozen=True)
class FunctionSpec:
    id: str
    formula: str
    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    holder_gamma: float = 1.0
    # four decimals, as tabulated
    reference_index: Optional[float] = None


def _spec(id, formula, f, df, ref):
    return FunctionSpec(id=id, formula=formula, eval=f, deriv=df, holder_gamma=1.0,
                        reference_index=ref)


BANK = {
    s.id: s
    for s in (
        _spec("h1", "sin(-pi/2 + 3 pi t / 2)",
              lambda t: np.sin(-_PI / 2 + 1.5 * _PI * np.asarray(t)),
              lambda t: 1.5 * _PI * np.cos(-_PI / 2 + 1.5 * _PI * np.asarray(t)),
              0.6667),
        _spec("h2", "cos(-pi/2 + 3 pi t / 2)",
              lambda t: np.cos(-_PI / 2 + 1.5 * _PI * np.asarray(t)),
              lambda t: -1.5 * _PI * np.sin(-_PI / 2 + 1.5 * _PI * np.asarray(t)),
              0.3333),
        _spec("h3", "sin(pi t / 2)",
              lambda t: np.sin(0.5 * _PI * np.asarray(t)),
              lambda t: 0.5 * _PI * np.cos(0.5 * _PI * np.asarray(t)),
              1.0),
        _spec("h4", "cos(pi t / 2)",
              lambda t: np.cos(0.5 * _PI * np.asarray(t)),
              lambda t: -0.5 * _PI * np.sin(0.5 * _PI * np.asarray(t)),
              0.0),
        _spec("h5", "(t - 1)^2 + sin(6 t)",
              lambda t: (np.asarray(t) - 1.0) ** 2 + np.sin(6.0 * np.asarray(t)),
              lambda t: 2.0 * (np.asarray(t) - 1.0) + 6.0 * np.cos(6.0 * np.asarray(t)),
              0.3311),
        _spec("h6", "(t - 0.25)^2 + sin(0.25 t)",
              lambda t: (np.asarray(t) - 0.25) ** 2 + np.sin(0.25 * np.asarray(t)),
              lambda t: 2.0 * (np.asarray(t) - 0.25) + 0.25 * np.cos(0.25 * np.asarray(t)),
              0.9799),
        _spec("h7", "t^3 - 5.6 t^2 + 6 t",
              lambda t: np.asarray(t) ** 3 - 5.6 * np.asarray(t) ** 2 + 6.0 * np.asarray(t),
              lambda t: 3.0 * np.asarray(t) ** 2 - 11.2 * np.asarray(t) + 6.0,
              0.8157),
        _spec("h8", "sin(2 pi t)",
              lambda t: np.sin(2.0 * _PI * np.asarray(t)),
              lambda t: 2.0 * _PI * np.cos(2.0 * _PI * np.asarray(t)),
              0.5),
    )
}


def get_function(id: str) -> FunctionSpec:
    try:
        return BANK[id]
    except KeyError:
        raise UnknownFunction(f"unknown function {id!r}; expected one of "
                              f"{', '.join(BANK)}") from None


def sample_on_grid(spec: FunctionSpec, n: int) -> SampledSeries:
    """Noise-free samples ``h(t_i)`` at ``t_i = (i - 1) / (n - 1)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    t = unit_grid(n)
    return SampledSeries(t, spec.eval(t))
