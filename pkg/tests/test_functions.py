import math

import numpy as np
import pytest

from monoidx import BANK, UnknownFunction, exact_index, get_function, index_numeric
from monoidx.functions import sample_on_grid

IDS = [f"h{i}" for i in range(1, 9)]


def test_bank_ids():
    assert sorted(BANK) == IDS


def test_unknown():
    with pytest.raises(UnknownFunction):
        get_function("h9")


def test_h3_endpoint():
    assert get_function("h3").eval(1.0) == 1.0


@pytest.mark.parametrize("fn, ref", [("h7", 0.8157), ("h8", 0.5), ("h6", 0.9799)])
def test_reference_values(fn, ref):
    assert get_function(fn).reference_index == ref


def test_formulas_spot():
    t = 0.37
    want = {
        "h1": math.sin(-math.pi / 2 + 3 * math.pi * t / 2),
        "h2": math.cos(-math.pi / 2 + 3 * math.pi * t / 2),
        "h3": math.sin(math.pi * t / 2),
        "h4": math.cos(math.pi * t / 2),
        "h5": (t - 1) ** 2 + math.sin(6 * t),
        "h6": (t - 0.25) ** 2 + math.sin(0.25 * t),
        "h7": t**3 - 5.6 * t**2 + 6 * t,
        "h8": math.sin(2 * math.pi * t),
    }
    for fn, v in want.items():
        assert get_function(fn).eval(np.array([t]))[0] == pytest.approx(v, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("fn", IDS)
def test_derivative_matches_finite_differences(fn):
    spec = get_function(fn)
    t = np.random.default_rng(3).uniform(1e-3, 1 - 1e-3, 1000)
    h = 1e-6
    fd = (spec.eval(t + h) - spec.eval(t - h)) / (2 * h)
    d = spec.deriv(t)
    # relative where the derivative is not tiny, absolute near its zeros
    assert (np.abs(fd - d) <= 1e-6 * np.maximum(np.abs(d), 1.0)).all()


@pytest.mark.parametrize("fn", IDS)
def test_exact_matches_reference(fn):
    spec = get_function(fn)
    assert spec.holder_gamma == 1.0
    assert abs(exact_index(spec, 10**6).value - spec.reference_index) <= 5e-4


def test_sample_on_grid_small():
    s = sample_on_grid(get_function("h3"), 2)
    assert s.t.tolist() == [0.0, 1.0]
    assert s.y[0] == 0.0 and s.y[1] == 1.0
    s = sample_on_grid(get_function("h4"), 3)
    assert s.y[0] == 1.0
    assert s.y[1] == pytest.approx(math.cos(math.pi / 4), abs=1e-15)
    assert abs(s.y[2]) < 1e-15


def test_h1_grid():
    assert abs(index_numeric(sample_on_grid(get_function("h1"), 10000)).value - 0.6667) <= 5e-4
