"""Pure-NumPy reference kernels for expanding-window recursive forecasts.

These mirror the compiled ``_recursive`` extension and serve as the import
fallback. Cumulative sums are accumulated in ``np.longdouble`` because the
squared level of a persistent regressor grows much faster than its
per-step increments.

Index conventions (0-based arrays):
  * forecast origins are t = k0..n-1; output slot i corresponds to t = k0+i;
  * the recursive-mean forecast for y[t] averages y[0:t];
  * the one-predictor model at origin t is fit on pairs (x[s-1], y[s]) for
    s = 1..t-1 and forecasts y[t] from x[t-1].
"""

import numpy as np

_LD = np.longdouble

# 2x2 normal-equation singularity threshold, scaled by step and regressor mass
_SINGULAR_TOL = 1e-12


def benchmark_errors(y, k0):
    """Forecast errors of the recursive-mean (intercept only) model."""
    n = y.shape[0]
    cs = np.cumsum(y.astype(_LD))
    t = np.arange(k0, n)
    forecasts = cs[k0 - 1 : n - 1] / t.astype(_LD)
    return np.asarray(y[k0:].astype(_LD) - forecasts, dtype=np.float64)


def _running_solution(y, x, k0):
    """Per-origin OLS solution from longdouble cumulative running sums.

    Returns (a, b, singular) longdouble arrays over origins t = k0..n-1;
    a and b are meaningless where singular is set.
    """
    n = y.shape[0]
    yl = y.astype(_LD)
    xl = x.astype(_LD)
    px = xl[: n - 1]
    py = yl[1:]
    c_cnt = np.arange(1, n, dtype=_LD)
    c_sx = np.cumsum(px)
    c_sxx = np.cumsum(px * px)
    c_sy = np.cumsum(py)
    c_sxy = np.cumsum(px * py)

    t = np.arange(k0, n)
    idx = t - 2
    cnt = c_cnt[idx]
    sx = c_sx[idx]
    sxx = c_sxx[idx]
    sy = c_sy[idx]
    sxy = c_sxy[idx]

    det = cnt * sxx - sx * sx
    singular = det < _SINGULAR_TOL * t.astype(_LD) * (sxx + 1.0)
    safe_det = np.where(singular, 1.0, det)
    b = (cnt * sxy - sx * sy) / safe_det
    a = (sy - b * sx) / cnt
    return a, b, singular


def recursive_coefficients(y, x, k0):
    """(intercept, slope, singular_flag) per origin, as float64 arrays."""
    a, b, singular = _running_solution(y, x, k0)
    return (
        a.astype(np.float64),
        b.astype(np.float64),
        singular.astype(bool),
    )


def marginal_errors(y, x, k0):
    """Forecast errors of the intercept-plus-one-lagged-predictor model.

    Returns (errors, flags) where flags marks steps on which the 2x2
    system was near singular and the recursive-mean fallback was used.
    """
    n = y.shape[0]
    yl = y.astype(_LD)
    xl = x.astype(_LD)
    a, b, singular = _running_solution(y, x, k0)
    t = np.arange(k0, n)
    forecasts = a + b * xl[t - 1]
    fallback = np.cumsum(yl)[t - 1] / t.astype(_LD)
    forecasts = np.where(singular, fallback, forecasts)
    errors = np.asarray(yl[t] - forecasts, dtype=np.float64)
    return errors, singular.astype(np.uint8)
