# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: increment sums, group means, Gaussian kernel smoothing.

Mirrors ``monoidx._fallback`` exactly in semantics. Sums use a pairwise
(tree) reduction with a 128-element sequential base case.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs
from libc.stdlib cimport malloc, free

cnp.import_array()

UNDERFLOW_Z = 38.7

cdef enum:
    BLOCK = 128


cdef double _pairwise(const double* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, half
    cdef double s
    if n <= BLOCK:
        s = 0.0
        for i in range(n):
            s += a[i]
        return s
    half = n // 2
    return _pairwise(a, half) + _pairwise(a + half, n - half)


cdef void _increment_sums(const double* y, Py_ssize_t n, double* buf,
                          double* pos, double* tv) noexcept nogil:
    # buf holds >= 2*(n-1) doubles
    cdef Py_ssize_t i, m = n - 1
    cdef double d
    if m <= 0:
        pos[0] = 0.0
        tv[0] = 0.0
        return
    for i in range(m):
        d = y[i + 1] - y[i]
        buf[i] = d if d > 0.0 else 0.0
        buf[m + i] = fabs(d)
    pos[0] = _pairwise(buf, m)
    tv[0] = _pairwise(buf + m, m)


cdef void _group_means(const double* y, Py_ssize_t n_groups, Py_ssize_t size,
                       double* out) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(n_groups):
        out[j] = _pairwise(y + j * size, size) / size


def increment_sums(y):
    cdef const double[::1] v = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    cdef double pos = 0.0, tv = 0.0
    cdef double* buf
    if n < 2:
        return 0.0, 0.0
    buf = <double*> malloc(2 * (n - 1) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        _increment_sums(&v[0], n, buf, &pos, &tv)
    free(buf)
    return pos, tv


def group_means(y, Py_ssize_t n_groups, Py_ssize_t group_size):
    cdef const double[::1] v = np.ascontiguousarray(y, dtype=np.float64)
    if n_groups * group_size > v.shape[0]:
        raise ValueError("groups overrun the sample")
    out = np.empty(n_groups, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        _group_means(&v[0], n_groups, group_size, &o[0])
    return out


def grouped_increment_sums(y, Py_ssize_t n_groups, Py_ssize_t group_size):
    cdef const double[::1] v = np.ascontiguousarray(y, dtype=np.float64)
    cdef double pos = 0.0, tv = 0.0
    cdef double* buf
    if n_groups * group_size > v.shape[0]:
        raise ValueError("groups overrun the sample")
    buf = <double*> malloc(3 * n_groups * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        _group_means(&v[0], n_groups, group_size, buf)
        _increment_sums(buf, n_groups, buf + n_groups, &pos, &tv)
    free(buf)
    return pos, tv


def grouped_increment_sums_rows(Y, Py_ssize_t n_groups, Py_ssize_t group_size):
    cdef const double[:, ::1] v = np.ascontiguousarray(Y, dtype=np.float64)
    cdef Py_ssize_t r, rows = v.shape[0]
    if n_groups * group_size > v.shape[1]:
        raise ValueError("groups overrun the sample")
    pos_out = np.empty(rows, dtype=np.float64)
    tv_out = np.empty(rows, dtype=np.float64)
    cdef double[::1] p = pos_out
    cdef double[::1] a = tv_out
    cdef double* buf = <double*> malloc(3 * n_groups * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        for r in range(rows):
            _group_means(&v[r, 0], n_groups, group_size, buf)
            _increment_sums(buf, n_groups, buf + n_groups, &p[r], &a[r])
    free(buf)
    return pos_out, tv_out


cdef Py_ssize_t _lower_bound(const double* t, Py_ssize_t n, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if t[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef Py_ssize_t _upper_bound(const double* t, Py_ssize_t n, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if t[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def nw_smooth(t, y, x, double scale):
    cdef const double[::1] tt = np.ascontiguousarray(t, dtype=np.float64)
    cdef const double[::1] yy = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[::1] xx = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = tt.shape[0], m = xx.shape[0]
    cdef Py_ssize_t j, i, lo, hi, k, near
    cdef double xj, u, w, num, den, reach = UNDERFLOW_Z * scale
    cdef long zero = 0
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef double* wbuf = <double*> malloc(2 * n * sizeof(double) + 1)
    if wbuf == NULL:
        raise MemoryError()
    with nogil:
        for j in range(m):
            xj = xx[j]
            lo = _lower_bound(&tt[0], n, xj - reach)
            hi = _upper_bound(&tt[0], n, xj + reach)
            k = 0
            for i in range(lo, hi):
                u = (xj - tt[i]) / scale
                w = exp(-0.5 * u * u)
                wbuf[k] = w * yy[i]
                wbuf[n + k] = w
                k += 1
            den = _pairwise(wbuf + n, k) if k > 0 else 0.0
            if den > 0.0:
                num = _pairwise(wbuf, k)
                o[j] = num / den
            else:
                zero += 1
                near = _lower_bound(&tt[0], n, xj)
                if near >= n:
                    near = n - 1
                elif near > 0 and (xj - tt[near - 1]) <= (tt[near] - xj):
                    near = near - 1
                o[j] = yy[near]
    free(wbuf)
    return out, zero
