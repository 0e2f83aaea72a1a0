"""Pairwise sample-split MSE statistics and their aggregates.

For predictor j the pairwise statistic compares a two-block (split) average
of the benchmark's squared forecast errors with the plain average of model
j's squared errors, scaled by sqrt(N)/omega_hat. Splitting the benchmark
MSE is what keeps the statistic's variance alive in this nested comparison;
the split location m0 is a user choice. The per-predictor statistics are
averaged into a single aggregate that is standard normal when no predictor
helps, so p-values come from the right tail of the normal distribution
without any simulated critical values.

A power enhancement adds sqrt(N)*mean((e0-ej)^2)/omega_hat to each pairwise
statistic: negligible under the null, strictly positive under alternatives.
Adding it is algebraically identical to recomputing the raw statistic with
the adjusted squared errors ej^2 - (e0-ej)^2, the same adjustment logic as
the Clark-West correction for estimation noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exceptions import ConfigurationError, DataError, DegenerateVarianceError
from .forecast import EvalConfig, ForecastErrorPanel
from .variance import (
    LrvEstimate,
    VarianceSource,
    bandwidth_rule,
    lrv_alt,
    lrv_neweywest,
    lrv_null,
)

_SQRT2 = math.sqrt(2.0)


def pvalue(stat: float) -> float:
    """Right-tail standard normal p-value, 1 - Phi(stat), via erfc."""
    if not math.isfinite(stat):
        raise DataError(f"statistic is not finite: {stat}")
    return 0.5 * math.erfc(stat / _SQRT2)


def split_mse(sq_errors, m0: int) -> float:
    """Two-block average: (mean of first m0 + mean of the rest) / 2."""
    sq = np.ascontiguousarray(sq_errors, dtype=np.float64)
    n = sq.shape[0]
    if not (1 <= m0 <= n - 1):
        raise ConfigurationError(f"m0 = {m0} outside [1, {n - 1}]")
    return 0.5 * (float(sq[:m0].mean()) + float(sq[m0:].mean()))


def _check_pair(e0, ej) -> tuple[np.ndarray, np.ndarray]:
    e0 = np.ascontiguousarray(e0, dtype=np.float64)
    ej = np.ascontiguousarray(ej, dtype=np.float64)
    if e0.shape != ej.shape or e0.ndim != 1:
        raise DataError("error sequences must be vectors of equal length")
    if not (np.isfinite(e0).all() and np.isfinite(ej).all()):
        raise DataError("error sequences contain non-finite values")
    return e0, ej


def _require_positive(omega: LrvEstimate, label: str) -> float:
    if omega.omega_sq <= 0.0:
        raise DegenerateVarianceError(
            f"zero long-run variance normalizer for {label}"
        )
    return omega.omega

def pairwise_stat(e0, ej, m0: int, omega: LrvEstimate) -> float:
    """sqrt(N)/omega * (split benchmark MSE - model-j MSE)."""
    e0, ej = _check_pair(e0, ej)
    w = _require_positive(omega, "pairwise statistic")
    n = e0.shape[0]
    spread = split_mse(e0 * e0, m0) - float((ej * ej).mean())
    return math.sqrt(n) / w * spread


def enhancement_term(e0, ej, omega: LrvEstimate) -> float:
    """sqrt(N)*mean((e0-ej)^2)/omega; nonnegative, zero iff e0 == ej."""
    e0, ej = _check_pair(e0, ej)
    w = _require_positive(omega, "enhancement term")
    n = e0.shape[0]
    gap = e0 - ej
    return math.sqrt(n) * float((gap * gap).mean()) / w


@dataclass(frozen=True)
class PairwiseStats:
    """All per-predictor statistics plus their aggregates and p-values."""

    d_raw: np.ndarray
    enhancement: np.ndarray
    d_enhanced: np.ndarray
    aggregate_raw: float
    aggregate_enhanced: float
    pvalue_raw: float
    pvalue_enhanced: float
    config: EvalConfig
    omegas: tuple[LrvEstimate, ...]
    names: tuple[str, ...]

    @property
    def p(self) -> int:
        return self.d_raw.shape[0]


def _omega_for_panel(
    panel: ForecastErrorPanel, config: EvalConfig
) -> list[LrvEstimate]:
    """One LrvEstimate per predictor, honoring the configured source."""
    source = config.variance_source
    mu0 = config.mu0
    if source.is_newey_west:
        m = config.bandwidth
        if m is None:
            m = bandwidth_rule(config.n, config.k0)
        if source.uses_null_residuals:
            shared = lrv_neweywest(panel.e0, mu0, m, source=VarianceSource.NW_NULL)
            return [shared] * panel.p
        return [
            lrv_neweywest(panel.E[:, j], mu0, m, source=VarianceSource.NW_ALT)
            for j in range(panel.p)
        ]
    if source.uses_null_residuals:
        shared = lrv_null(panel.e0, mu0)
        return [shared] * panel.p
    return [lrv_alt(panel.E[:, j], mu0) for j in range(panel.p)]


def aggregate_stats(
    panel: ForecastErrorPanel,
    config: EvalConfig,
    names: Optional[Sequence[str]] = None,
) -> PairwiseStats:
    """Pairwise statistics for every predictor plus the aggregate test.

    The normalizer is shared across predictors for the null-residual
    sources and recomputed per predictor for the alternative-residual
    sources. Aggregates are plain means over predictors, accumulated in a
    fixed order so parallel callers see identical results.
    """
    p = panel.p
    if names is None:
        names = tuple(f"x{j + 1}" for j in range(p))
    else:
        names = tuple(names)
        if len(names) != p:
            raise ConfigurationError(f"{len(names)} names for {p} predictors")
    if panel.n_eval != config.n_eval:
        raise ConfigurationError(
            f"panel spans {panel.n_eval} periods but config implies {config.n_eval}"
        )
    omegas = _omega_for_panel(panel, config)
    for name, om in zip(names, omegas):
        if om.omega_sq <= 0.0:
            label = "benchmark residuals" if om.source.uses_null_residuals else name
            raise DegenerateVarianceError(
                f"degenerate variance normalizer ({label})"
            )
    m0 = config.m0
    d_raw = np.empty(p)
    enh = np.empty(p)
    for j in range(p):
        d_raw[j] = pairwise_stat(panel.e0, panel.E[:, j], m0, omegas[j])
        enh[j] = enhancement_term(panel.e0, panel.E[:, j], omegas[j])
    d_enhanced = d_raw + enh
    agg_raw = float(d_raw.mean())
    agg_enh = float(d_enhanced.mean())
    return PairwiseStats(
        d_raw=d_raw,
        enhancement=enh,
        d_enhanced=d_enhanced,
        aggregate_raw=agg_raw,
        aggregate_enhanced=agg_enh,
        pvalue_raw=pvalue(agg_raw),
        pvalue_enhanced=pvalue(agg_enh),
        config=config,
        omegas=tuple(omegas),
        names=names,
    )


def evaluate(sample, config: EvalConfig, threads: int = 1) -> PairwiseStats:
    """Full pipeline: forecast-error panel, then aggregate statistics."""
    from .forecast import forecast_error_panel

    panel = forecast_error_panel(sample, config, threads=threads)
    return aggregate_stats(panel, config, names=sample.names)
