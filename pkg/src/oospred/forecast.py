"""Recursive expanding-window forecast errors.

Given a predictand ``y`` and a pool of candidate predictors, this module
produces the out-of-sample one-step-ahead forecast errors of the
intercept-only benchmark and of each intercept-plus-one-predictor model,
re-estimated at every origin t = k0..n-1 on all data available up to t.
Predictors enter lagged once: the model fit at origin t regresses y[s] on
(1, x[s-1]) and forecasts y[t] from x[t-1] (0-based arrays).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .exceptions import ConfigurationError, DataError
from .variance import VarianceSource


def _as_float_vector(v, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise DataError(f"{name} must be one-dimensional")
    return arr


@dataclass(frozen=True)
class SeriesSample:
    """A predictand and its candidate-predictor pool, ordered in time.

    ``X[t]`` holds the predictor values used to forecast ``y[t+1]``
    (positionally: row t of X pairs with entry t+1 of y).
    """

    y: np.ndarray
    X: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self):
        y = _as_float_vector(self.y, "y")
        X = np.ascontiguousarray(self.X, dtype=np.float64)
        if X.ndim != 2:
            raise DataError("X must be a 2-d matrix")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "names", tuple(str(s) for s in self.names))
        if self.n < 8:
            raise DataError(f"need at least 8 observations, got {self.n}")
        if self.p < 1:
            raise DataError("need at least one predictor")
        if X.shape[0] != self.n:
            raise DataError(f"X has {X.shape[0]} rows but y has {self.n}")
        if len(self.names) != self.p:
            raise DataError(f"{len(self.names)} names for {self.p} predictors")
        if len(set(self.names)) != self.p:
            raise DataError("predictor names must be distinct")
        if not np.isfinite(y).all():
            raise DataError("y contains non-finite values")
        if not np.isfinite(X).all():
            raise DataError("X contains non-finite values")

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @classmethod
    def from_arrays(cls, y, X, names: Optional[Sequence[str]] = None) -> "SeriesSample":
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[0] == 1 and np.asarray(y).shape[0] != 1:
            X = X.T
        if names is None:
            names = tuple(f"x{j + 1}" for j in range(X.shape[1]))
        return cls(y=np.asarray(y, dtype=np.float64), X=X, names=tuple(names))


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation-window tuning: estimation fraction, split fraction, normalizer.

    k0 = floor(n * pi0) is the size of the initial estimation window and
    m0 = floor((n - k0) * mu0) the split point of the evaluation window.
    mu0 = 1/2 is rejected outright: at that split the two-block MSE average
    collapses to the plain mean and the test's variance degenerates.
    """

    n: int
    pi0: float = 0.25
    mu0: float = 0.35
    variance_source: VarianceSource = VarianceSource.ALT
    bandwidth: Optional[int] = None

    def __post_init__(self):
        if not (0.0 < self.pi0 < 1.0):
            raise ConfigurationError(f"pi0 must lie in (0,1), got {self.pi0}")
        if self.mu0 in (0.0, 0.5, 1.0) or not (0.0 < self.mu0 < 1.0):
            raise ConfigurationError(
                f"mu0 must lie in (0,1) excluding 1/2, got {self.mu0}; "
                "mu0=1/2 makes the split-sample variance degenerate"
            )
        if not isinstance(self.variance_source, VarianceSource):
            object.__setattr__(
                self, "variance_source", VarianceSource(self.variance_source)
            )
        if self.k0 < 2:
            raise ConfigurationError(
                f"k0 = floor({self.n}*{self.pi0}) = {self.k0} < 2: estimation "
                "window too short"
            )
        if not (1 <= self.m0 <= self.n_eval - 1):
            raise ConfigurationError(
                f"m0 = {self.m0} outside [1, {self.n_eval - 1}]: evaluation "
                "window cannot be split"
            )
        if self.bandwidth is not None:
            if self.bandwidth < 0 or self.bandwidth >= self.n_eval:
                raise ConfigurationError(
                    f"bandwidth {self.bandwidth} outside [0, {self.n_eval - 1}]"
                )

    @property
    def k0(self) -> int:
        return math.floor(self.n * self.pi0)

    @property
    def n_eval(self) -> int:
        """Length of the evaluation window, n - k0."""
        return self.n - self.k0

    @property
    def m0(self) -> int:
        return math.floor(self.n_eval * self.mu0)


@dataclass(frozen=True)
class ForecastErrorPanel:
    """Out-of-sample forecast errors, aligned on the evaluation window.

    ``e0[i]`` and row i of ``E`` refer to the forecast of ``y[k0+i]`` made
    at origin k0+i. ``degenerate_flags[i, j]`` marks steps where predictor
    j's normal equations were near singular and the benchmark forecast was
    substituted.
    """

    e0: np.ndarray
    E: np.ndarray
    degenerate_flags: np.ndarray

    def __post_init__(self):
        if self.E.shape[0] != self.e0.shape[0]:
            raise DataError("e0 and E are not aligned")
        if self.degenerate_flags.shape != self.E.shape:
            raise DataError("degenerate_flags shape mismatch")
        if not (np.isfinite(self.e0).all() and np.isfinite(self.E).all()):
            raise DataError("forecast errors contain non-finite values")

    @property
    def n_eval(self) -> int:
        return self.e0.shape[0]

    @property
    def p(self) -> int:
        return self.E.shape[1]


def benchmark_forecast_errors(y, k0: int) -> np.ndarray:
    """Errors of the recursive-mean forecast, y[t] - mean(y[0:t]), t = k0..n-1."""
    y = _as_float_vector(y, "y")
    n = y.shape[0]
    if not (2 <= k0 <= n - 1):
        raise ConfigurationError(f"k0 = {k0} outside [2, {n - 1}]")
    return kernels.benchmark_errors(y, k0)


def marginal_forecast_errors(y, x, k0: int) -> tuple[np.ndarray, np.ndarray]:
    """Errors of the recursive OLS forecast on (1, lagged x), plus fallback flags."""
    y = _as_float_vector(y, "y")
    x = _as_float_vector(x, "x")
    if x.shape[0] != y.shape[0]:
        raise ConfigurationError(
            f"predictor length {x.shape[0]} != sample length {y.shape[0]}"
        )
    n = y.shape[0]
    if not (2 <= k0 <= n - 1):
        raise ConfigurationError(f"k0 = {k0} outside [2, {n - 1}]")
    errors, flags = kernels.marginal_errors(y, x, k0)
    return errors, flags.astype(bool)


def forecast_error_panel(
    sample: SeriesSample, config: EvalConfig, threads: int = 1
) -> ForecastErrorPanel:
    """Benchmark plus per-predictor forecast errors over the evaluation window.

    Columns are computed independently, so the result does not depend on
    ``threads``; the thread pool only pays off with the compiled kernel,
    which releases the GIL.
    """
    if config.n != sample.n:
        raise ConfigurationError(
            f"config built for n = {config.n} but sample has n = {sample.n}"
        )
    k0 = config.k0
    e0 = benchmark_forecast_errors(sample.y, k0)
    n_eval, p = e0.shape[0], sample.p
    E = np.empty((n_eval, p), dtype=np.float64)
    flags = np.empty((n_eval, p), dtype=bool)

    def fill(j: int) -> None:
        ej, fj = marginal_forecast_errors(sample.y, sample.X[:, j], k0)
        E[:, j] = ej
        flags[:, j] = fj

    if threads > 1 and p > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, range(p)))
    else:
        for j in range(p):
            fill(j)
    return ForecastErrorPanel(e0=e0, E=E, degenerate_flags=flags)
