"""Pure numpy versions of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` module. Results
agree with the compiled path to rounding (both use pairwise summation, with
different block layouts).
"""
import numpy as np

# exp(-0.5 * u**2) is exactly 0.0 in IEEE double for u beyond this
UNDERFLOW_Z = 38.7

_CHUNK = 256


def increment_sums(y):
    """Return (sum of positive increments, sum of absolute increments)."""
    d = np.diff(np.asarray(y, dtype=np.float64))
    return float(np.add.reduce(np.maximum(d, 0.0))), float(np.add.reduce(np.abs(d)))


def group_means(y, n_groups, group_size):
    y = np.asarray(y, dtype=np.float64)
    used = n_groups * group_size
    return y[:used].reshape(n_groups, group_size).sum(axis=1) / group_size


def grouped_increment_sums(y, n_groups, group_size):
    return increment_sums(group_means(y, n_groups, group_size))


def grouped_increment_sums_rows(Y, n_groups, group_size):
    """Row-wise :func:`grouped_increment_sums` for a 2-D array of samples."""
    Y = np.asarray(Y, dtype=np.float64)
    used = n_groups * group_size
    g = Y[:, :used].reshape(Y.shape[0], n_groups, group_size).sum(axis=2) / group_size
    d = np.diff(g, axis=1)
    return np.maximum(d, 0.0).sum(axis=1), np.abs(d).sum(axis=1)


def nw_smooth(t, y, x, scale):
    """Gaussian Nadaraya-Watson predictions at ``x`` from sorted training ``t``.

    Points whose total weight underflows to zero get the ``y`` of the nearest
    training location (left one on ties). Returns ``(pred, n_zero_mass)``.
    """
    t = np.ascontiguousarray(t, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(x.shape[0])
    zero = 0
    for start in range(0, x.shape[0], _CHUNK):
        xs = x[start:start + _CHUNK]
        u = (xs[:, None] - t[None, :]) / scale
        w = np.exp(-0.5 * u * u)
        num = (w * y).sum(axis=1)
        den = w.sum(axis=1)
        ok = den > 0.0
        pred = np.empty(xs.shape[0])
        pred[ok] = num[ok] / den[ok]
        if not ok.all():
            bad = np.flatnonzero(~ok)
            pred[bad] = y[_nearest(t, xs[bad])]
            zero += bad.size
        out[start:start + _CHUNK] = pred
    return out, zero


def _nearest(t, xs):
    j = np.searchsorted(t, xs)
    j = np.clip(j, 1, t.size - 1) if t.size > 1 else np.zeros_like(j)
    if t.size == 1:
        return j
    left = j - 1
    take_left = (xs - t[left]) <= (t[j] - xs)
    return np.where(take_left, left, j)
