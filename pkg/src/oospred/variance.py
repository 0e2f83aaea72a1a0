"""Long-run variance of the MSE-spread numerator.

The statistic's numerator behaves like a weighted partial sum of the
demeaned squared errors eta_t = e_t^2 - mean(e^2); its limiting variance
is the long-run variance phi^2 of eta_t times the split factor
(1-2*mu0)^2 / (4*mu0*(1-mu0)). Three flavors of phi^2 are provided:
the plain sample variance of squared benchmark residuals, the same on a
marginal model's residuals, and a Newey-West weighted-autocovariance sum
for serially correlated eta_t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import ConfigurationError, DataError


class VarianceSource(Enum):
    """Which residual sequence (and weighting) feeds the normalizer."""

    NULL = "null"
    ALT = "alt"
    NW_NULL = "nw-null"
    NW_ALT = "nw-alt"

    @property
    def uses_null_residuals(self) -> bool:
        return self in (VarianceSource.NULL, VarianceSource.NW_NULL)

    @property
    def is_newey_west(self) -> bool:
        return self in (VarianceSource.NW_NULL, VarianceSource.NW_ALT)


def split_factor(mu0: float) -> float:
    """(1-2*mu0)^2 / (4*mu0*(1-mu0)); positive on (0,1) away from 1/2."""
    if mu0 in (0.0, 0.5, 1.0) or not (0.0 < mu0 < 1.0):
        raise ConfigurationError(
            f"mu0 must lie in (0,1) excluding 1/2, got {mu0}"
        )
    return (1.0 - 2.0 * mu0) ** 2 / (4.0 * mu0 * (1.0 - mu0))


@dataclass(frozen=True)
class LrvEstimate:
    """A long-run variance estimate omega_sq = factor * phi_sq.

    ``floored`` marks a Newey-West sum that came out negative and was
    clipped to zero.
    """

    omega_sq: float
    phi_sq: float
    factor: float
    source: VarianceSource
    bandwidth_used: int = 0
    floored: bool = False

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega_sq)


def _demeaned_squares(errors) -> np.ndarray:
    e = np.ascontiguousarray(errors, dtype=np.float64)
    if e.ndim != 1 or e.size == 0:
        raise DataError("errors must be a nonempty vector")
    if not np.isfinite(e).all():
        raise DataError("errors contain non-finite values")
    sq = e * e
    return sq - sq.mean()


def _autocov(eta: np.ndarray, s: int) -> float:
    """Biased autocovariance at lag s: sum(eta_t * eta_{t-s}) / len(eta)."""
    n = eta.shape[0]
    if s == 0:
        return float(np.dot(eta, eta)) / n
    return float(np.dot(eta[s:], eta[: n - s])) / n


def lrv_null(e0, mu0: float) -> LrvEstimate:
    """Plain estimator from benchmark-model errors: factor * var(e0^2)."""
    factor = split_factor(mu0)
    phi_sq = _autocov(_demeaned_squares(e0), 0)
    return LrvEstimate(
        omega_sq=factor * phi_sq,
        phi_sq=phi_sq,
        factor=factor,
        source=VarianceSource.NULL,
    )


def lrv_alt(ej, mu0: float) -> LrvEstimate:
    """Plain estimator from a marginal model's errors."""
    factor = split_factor(mu0)
    phi_sq = _autocov(_demeaned_squares(ej), 0)
    return LrvEstimate(
        omega_sq=factor * phi_sq,
        phi_sq=phi_sq,
        factor=factor,
        source=VarianceSource.ALT,
    )


def lrv_neweywest(
    errors,
    mu0: float,
    m: int,
    source: VarianceSource = VarianceSource.NW_ALT,
) -> LrvEstimate:
    """Newey-West flavor: weighted autocovariances of demeaned squared errors.

    Uses the weight (1 - |s|/N) with N the evaluation-window length, as in
    the plain truncated formulation (not the usual 1 - |s|/(m+1) Bartlett
    kernel). The truncated sum is not guaranteed nonnegative; a negative
    result is floored at zero and flagged. m = 0 reduces exactly to the
    plain estimators.
    """
    factor = split_factor(mu0)
    eta = _demeaned_squares(errors)
    n = eta.shape[0]
    if not (0 <= m < n):
        raise ConfigurationError(f"bandwidth m = {m} outside [0, {n - 1}]")
    total = _autocov(eta, 0)
    for s in range(1, m + 1):
        total += 2.0 * (1.0 - s / n) * _autocov(eta, s)
    floored = total < 0.0
    phi_sq = 0.0 if floored else total
    return LrvEstimate(
        omega_sq=factor * phi_sq,
        phi_sq=phi_sq,
        factor=factor,
        source=source,
        bandwidth_used=m,
        floored=floored,
    )


def bandwidth_rule(n: int, k0: int) -> int:
    """Rule-of-thumb lag truncation floor(0.75 * (n-k0)^(1/3))."""
    if n <= k0:
        raise ConfigurationError(f"need n > k0, got n = {n}, k0 = {k0}")
    return max(0, math.floor(0.75 * float(np.cbrt(n - k0))))
