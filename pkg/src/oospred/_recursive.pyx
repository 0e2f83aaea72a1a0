# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for expanding-window recursive forecasts.

Running sums are kept in C ``long double`` so that large persistent
regressors do not erode the normal-equation solve. Semantics mirror
``_recursive_py`` exactly; see that module for the reference definitions.
"""

import numpy as np

cimport numpy as cnp


def benchmark_errors(double[::1] y, Py_ssize_t k0):
    """Forecast errors of the recursive-mean (intercept only) model."""
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t nout = n - k0
    out_arr = np.empty(nout, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef long double s = 0.0
    cdef Py_ssize_t t, i
    with nogil:
        for t in range(k0):
            s += y[t]
        for i in range(nout):
            t = k0 + i
            out[i] = <double> (y[t] - s / t)
            s += y[t]
    return out_arr


def marginal_errors(double[::1] y, double[::1] x, Py_ssize_t k0):
    """Forecast errors of the intercept-plus-one-lagged-predictor model.

    At origin t the coefficients solve the normal equations on pairs
    (x[s-1], y[s]) for s = 1..t-1; the forecast for y[t] is a + b*x[t-1].
    A near-singular 2x2 system falls back to the recursive-mean forecast
    and raises the step's flag.
    """
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t nout = n - k0
    err_arr = np.empty(nout, dtype=np.float64)
    flag_arr = np.zeros(nout, dtype=np.uint8)
    cdef double[::1] err = err_arr
    cdef unsigned char[::1] flag = flag_arr
    cdef long double sy_all = 0.0
    cdef long double cnt = 0.0, sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0
    cdef long double det, b, a, fc
    cdef double xt, yt
    cdef Py_ssize_t t, i, s
    with nogil:
        for s in range(k0):
            sy_all += y[s]
        for s in range(1, k0):
            xt = x[s - 1]
            yt = y[s]
            cnt += 1.0
            sx += xt
            sxx += xt * xt
            sy += yt
            sxy += xt * yt
        for i in range(nout):
            t = k0 + i
            xt = x[t - 1]
            yt = y[t]
            det = cnt * sxx - sx * sx
            if det < 1e-12 * t * (sxx + 1.0):
                fc = sy_all / t
                flag[i] = 1
            else:
                b = (cnt * sxy - sx * sy) / det
                a = (sy - b * sx) / cnt
                fc = a + b * xt
            err[i] = <double> (yt - fc)
            cnt += 1.0
            sx += xt
            sxx += xt * xt
            sy += yt
            sxy += xt * yt
            sy_all += yt
    return err_arr, flag_arr
