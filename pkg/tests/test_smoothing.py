import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from monoidx import (
    BandwidthGrid,
    InvalidBandwidth,
    NoiseSpec,
    SampledSeries,
    SyntheticSource,
    TooFewPoints,
    alpha_from_bandwidth,
    cv_score,
    generate_series,
    get_function,
    kernel_smooth,
    select_bandwidth,
)
from monoidx.smoothing import _fold_errors_direct, _GridConvolver, _fold_errors_grid, fold_assignment

from oracles import nw_two_point


def test_single_point():
    out = kernel_smooth((np.array([0.5]), np.array([3.0])), [0.0, 0.5, 0.97], 0.2)
    assert out.tolist() == [3.0, 3.0, 3.0]


def test_symmetric_pair():
    out = kernel_smooth((np.array([0.4, 0.6]), np.array([0.0, 2.0])), [0.5], 0.3)
    assert out[0] == pytest.approx(1.0, abs=1e-15)


def test_two_point_hand_evaluation():
    got = kernel_smooth((np.array([0.0, 1.0]), np.array([0.0, 1.0])), [0.25], 0.5)[0]
    s = 0.18533
    w0 = math.exp(-(0.25**2) / (2 * s * s))
    w1 = math.exp(-(0.75**2) / (2 * s * s))
    # s above is rounded to 5 digits, which moves the result by ~4e-4 relative
    assert got == pytest.approx(w1 / (w0 + w1), rel=1e-3)
    assert got == pytest.approx(nw_two_point([0.0, 1.0], [0.0, 1.0], 0.25, 0.5), rel=1e-14)


def test_quartiles_at_quarter_bandwidth():
    from scipy.stats import norm
    assert norm.ppf(0.75) * 0.3706506 == pytest.approx(0.25, abs=1e-7)


@given(st.floats(1e-3, 2.0), st.floats(-1e300, 1e300))
def test_constants_reproduced(b, c):
    t = np.linspace(0, 1, 37)
    out = kernel_smooth((t, np.full(37, c)), np.linspace(-0.1, 1.1, 50), b)
    assert (out == c).all()


def test_unsorted_pairs_are_sorted():
    t = np.array([0.9, 0.1, 0.5])
    y = np.array([3.0, 1.0, 2.0])
    a = kernel_smooth((t, y), [0.3, 0.7], 0.2)
    b = kernel_smooth((np.sort(t), np.array([1.0, 2.0, 3.0])), [0.3, 0.7], 0.2)
    assert np.array_equal(a, b)


def test_bad_bandwidth():
    with pytest.raises(InvalidBandwidth):
        kernel_smooth((np.array([0.5]), np.array([1.0])), [0.5], 0.0)


def test_default_grid():
    g = BandwidthGrid.default()
    assert len(g) == 30
    assert g.values[0] == 0.01
    assert g.values[1] == pytest.approx(0.0438, abs=1e-4)
    assert g.values[-1] == pytest.approx(0.99, abs=1e-15)
    assert np.allclose(np.diff(g.values), 0.98 / 29)


@pytest.mark.parametrize("vals", [[0.1, 0.1], [0.0, 0.5], [0.5, 1.0], [0.3, 0.2], []])
def test_grid_validation(vals):
    with pytest.raises(InvalidBandwidth):
        BandwidthGrid(np.array(vals))


def test_alpha_from_bandwidth():
    assert alpha_from_bandwidth(0.01, 10000) == pytest.approx(0.5)
    n = 5000
    assert alpha_from_bandwidth(n**-0.28, n) == pytest.approx(0.28)
    assert round(alpha_from_bandwidth(0.0763, 10000), 3) == 0.279
    for b in (0.0, 1.0):
        with pytest.raises(InvalidBandwidth):
            alpha_from_bandwidth(b, 100)


@given(st.floats(1e-6, 1 - 1e-6), st.floats(1e-6, 1 - 1e-6), st.integers(2, 10**7))
def test_alpha_monotone(b1, b2, n):
    a1, a2 = alpha_from_bandwidth(b1, n), alpha_from_bandwidth(b2, n)
    assert 0 < a1 and 0 < a2
    if b1 < b2:
        assert a1 > a2


def test_fold_assignment_balanced():
    ids = fold_assignment(103, 5, seed=1, repeat=2)
    counts = np.bincount(ids)
    assert counts.max() - counts.min() <= 1
    assert np.array_equal(ids, fold_assignment(103, 5, seed=1, repeat=2))
    assert not np.array_equal(ids, fold_assignment(103, 5, seed=1, repeat=3))


def test_too_few_points():
    s = SampledSeries.from_values(np.arange(9.0))
    with pytest.raises(TooFewPoints):
        cv_score(s, 0.1, folds=5)
    with pytest.raises(TooFewPoints):
        cv_score(s, 0.1, folds=1)


def test_line_small_bandwidth():
    s = SampledSeries.from_values(np.linspace(0, 1, 500))
    assert cv_score(s, 0.01) < 1e-5


def test_cv_score_determinism():
    s = generate_series(get_function("h5"), 2000, NoiseSpec(1.0, 3))
    assert cv_score(s, 0.1, 5, 7) == cv_score(s, 0.1, 5, 7)


def test_pure_noise_score_near_variance():
    t = np.linspace(0, 1, 1000)
    rng = np.random.default_rng(99)
    for b in (0.01, 0.5, 0.99):
        ratios = []
        for seed in range(50):
            y = rng.normal(size=1000)
            ratios.append(cv_score(SampledSeries(t, y), b, 5, seed) / y.var(ddof=1))
        assert 0.75 <= np.mean(ratios) <= 1.25, (b, np.mean(ratios))


@pytest.mark.parametrize("n", [50, 997, 4000])
def test_fft_route_matches_direct(n):
    s = generate_series(get_function("h8"), n, NoiseSpec(1.0, n))
    ids = fold_assignment(n, 5, 4)
    bws = list(BandwidthGrid.default().values)
    a, za = _fold_errors_grid(s, ids, 5, bws, _GridConvolver(n, 1.0 / (n - 1)))
    b, zb = _fold_errors_direct(s, ids, 5, bws)
    assert za == zb
    assert np.allclose(a, b, rtol=1e-12, atol=0)


def test_irregular_design_uses_direct_route():
    rng = np.random.default_rng(5)
    t = np.sort(rng.uniform(0, 1, 400))
    s = SampledSeries(t, np.sin(6 * t) + rng.normal(size=400))
    rep = select_bandwidth(s, repeats=3, seed=2)
    assert rep.mode == "data"
    ids = fold_assignment(400, 5, 2, 0)
    want, _ = _fold_errors_direct(s, ids, 5, list(rep.grid.values))
    assert cv_score(s, rep.grid.values[4], 5, 2) == pytest.approx(want[4], rel=1e-14)


def test_report_invariants():
    rep = select_bandwidth(SyntheticSource(get_function("h1"), 2000, 1.0), repeats=4, seed=3)
    assert len(rep.mean_errors) == len(rep.grid)
    assert rep.b_cv in rep.grid.values
    assert rep.mean_errors[list(rep.grid.values).index(rep.b_cv)] == rep.mean_errors.min()
    assert rep.alpha_cv == math.log(1 / rep.b_cv) / math.log(2000)
    assert (rep.mean_errors >= 0).all()


def test_worker_invariance():
    src = SyntheticSource(get_function("h4"), 3000, 1.0)
    a = select_bandwidth(src, repeats=6, seed=11, workers=1)
    b = select_bandwidth(src, repeats=6, seed=11, workers=3)
    assert a.mean_errors.tobytes() == b.mean_errors.tobytes()
    s = src.draw(11, 0)
    c = select_bandwidth(s, repeats=4, seed=1, workers=1)
    d = select_bandwidth(s, repeats=4, seed=1, workers=4)
    assert c.to_dict() == d.to_dict()


def test_tie_breaks_to_smallest():
    s = SampledSeries.from_values(np.full(40, 2.0))
    rep = select_bandwidth(s, repeats=2)
    assert rep.b_cv == rep.grid.values[0]


@pytest.mark.slow
def test_h1_alpha_cv():
    src = SyntheticSource(get_function("h1"), 10**4, 1.0)
    vals = [select_bandwidth(src, repeats=50, seed=s).alpha_cv for s in range(3)]
    assert abs(np.median(vals) - 0.28) <= 0.05
