"""Shared test helpers."""

import numpy as np
import pytest


def batch_ols_forecast_errors(y, x, k0):
    """Independent oracle: refit the 2-parameter OLS from scratch at every
    origin via lstsq and forecast y[t] from (1, x[t-1])."""
    n = len(y)
    out = np.empty(n - k0)
    for i, t in enumerate(range(k0, n)):
        design = np.column_stack([np.ones(t - 1), x[: t - 1]])
        coef, *_ = np.linalg.lstsq(design, y[1:t], rcond=None)
        out[i] = y[t] - (coef[0] + coef[1] * x[t - 1])
    return out


def batch_mean_forecast_errors(y, k0):
    """Independent oracle: recompute the expanding mean from scratch."""
    n = len(y)
    return np.array([y[t] - np.mean(y[:t]) for t in range(k0, n)])


def toy_fredmd_text(n_months=160, p=3, seed=0, tcodes=None, start_year=1980):
    """A small FRED-MD format file with a TARGET column and p predictors."""
    rng = np.random.default_rng(seed)
    names = ["TARGET"] + [f"PRED{j + 1}" for j in range(p)]
    if tcodes is None:
        tcodes = [1] * (p + 1)
    values = rng.standard_normal((n_months, p + 1))
    lines = ["sasdate," + ",".join(names)]
    lines.append("Transform:," + ",".join(str(c) for c in tcodes))
    year, month = start_year, 1
    for i in range(n_months):
        cells = ",".join(repr(float(v)) for v in values[i])
        lines.append(f"{month}/1/{year},{cells}")
        month += 1
        if month > 12:
            month, year = 1, year + 1
    return "\n".join(lines) + "\n", names


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
