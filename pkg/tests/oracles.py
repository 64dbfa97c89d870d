"""Independent reference computations used only by the tests."""
import itertools
import math

import numpy as np


def lattice_min_tv_distance(y_units):
    """Minimum TV distance from an integer path to any non-increasing integer path.

    Dynamic programming over every lattice value the comparison path can
    take; exhaustive over the lattice, and unaware of the closed form.
    """
    y = [int(v) for v in y_units]
    d = np.diff(y)
    span = int(np.abs(d).sum())
    levels = -np.arange(span + 1)  # f_0 = 0 without loss of generality
    cost = np.full(span + 1, np.inf)
    cost[0] = 0.0
    step = levels[None, :] - levels[:, None]  # step[v, w] = f_new - f_old
    allowed = step <= 0
    for di in d:
        trans = np.where(allowed, np.abs(di - step), np.inf)
        cost = (cost[:, None] + trans).min(axis=0)
    return float(cost.min())


def enumerate_min_tv_distance(y_units, depth):
    """Brute force over every non-increasing step vector with steps in [-depth, 0]."""
    d = np.diff([int(v) for v in y_units])
    best = math.inf
    for e in itertools.product(range(-depth, 1), repeat=d.size):
        best = min(best, float(np.abs(d - np.array(e)).sum()))
    return best


def nw_two_point(t, y, x, bandwidth):
    s = 0.3706506 * bandwidth
    w = [math.exp(-((x - ti) ** 2) / (2 * s * s)) for ti in t]
    return sum(wi * yi for wi, yi in zip(w, y)) / sum(w)


def nw_brute(t, y, x, bandwidth):
    """Plain double loop Nadaraya-Watson without any windowing."""
    s = 0.3706506 * bandwidth
    out = []
    for xi in x:
        num = den = 0.0
        for ti, yi in zip(t, y):
            w = math.exp(-0.5 * ((xi - ti) / s) ** 2)
            num += w * yi
            den += w
        out.append(num / den if den > 0 else None)
    return out


def midpoint_integrals(deriv, resolution):
    h = 1.0 / resolution
    pos = tv = 0.0
    for k in range(resolution):
        v = deriv((k + 0.5) * h)
        pos += max(v, 0.0)
        tv += abs(v)
    return pos * h, tv * h
