# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Clenshaw kernel: pairwise cosine/sine sums on angle grids.

Mirrors postrig._kernels_py.pair_sums; see that module for the algorithm
notes (Reinsch-branched backward recurrence, angles reduced mod 2*pi).
"""

from libc.math cimport cos, fmod, sin

import numpy as np

BACKEND = "cython"

cdef double TWO_PI = 6.283185307179586476925286766559


cdef void _pair_sums_range(const double[::1] c, const double[::1] x,
                           double[::1] out_c, double[::1] out_s,
                           Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t i, k
    cdef double xr, half, s2, c2, cosx, sinx, kappa, u, acc, t
    for i in range(lo, hi):
        xr = fmod(x[i], TWO_PI)
        if xr < 0.0:
            xr += TWO_PI
        half = 0.5 * xr
        s2 = sin(half)
        c2 = cos(half)
        cosx = 1.0 - 2.0 * s2 * s2
        sinx = 2.0 * s2 * c2
        u = 0.0
        acc = 0.0
        if cosx > 0.0:
            kappa = -4.0 * s2 * s2
            for k in range(n - 1, -1, -1):
                t = c[k] + kappa * u + acc
                u = t + u
                acc = t
            out_c[i] = u * (0.5 * kappa) + acc
        else:
            kappa = 4.0 * c2 * c2
            for k in range(n - 1, -1, -1):
                t = c[k] + kappa * u - acc
                u = t - u
                acc = t
            out_c[i] = u * (0.5 * kappa) - acc
        out_s[i] = u * sinx


def pair_sums(coeffs, x):
    """Return (C, S) with C = sum c_k cos(kx), S = sum c_k sin(kx), k from 1."""
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    xs = np.ascontiguousarray(x, dtype=np.float64)
    out_c = np.zeros(xs.shape, dtype=np.float64)
    out_s = np.zeros(xs.shape, dtype=np.float64)
    cdef double[::1] xv = xs.reshape(-1)
    cdef double[::1] cv = out_c.reshape(-1)
    cdef double[::1] sv = out_s.reshape(-1)
    cdef Py_ssize_t m = xv.shape[0]
    if c.shape[0] == 0 or m == 0:
        return out_c, out_s
    with nogil:
        _pair_sums_range(c, xv, cv, sv, 0, m)
    return out_c, out_s
