"""Closed-form local-power noncentralities and the key-player selection rule.

Under local alternatives the aggregate statistic converges to a standard
normal shifted by a deterministic noncentrality Q. This module evaluates Q
for stationary pools, mildly integrated pools, and mixed pools, so the
simulator's mean shifts can be cross-checked analytically. The enhanced
statistic's shift is 2Q, which pins the raw-vs-enhanced asymptotic
relative efficiency at 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple, Optional

import numpy as np

from .exceptions import ConfigurationError, DataError

# Long-run variance of u^2 - E[u^2] for Gaussian homoskedastic u with unit
# variance (a centered chi-square(1)); the default oracle plug-in.
PHI_SQ_GAUSSIAN = 2.0


def g_factor(mu0: float, pi0: float, phi_sq: float) -> float:
    """2*sqrt(1-pi0)*sqrt(mu0*(1-mu0)) / (sqrt(phi_sq)*(1-2*mu0))."""
    if mu0 == 0.5:
        raise ConfigurationError("mu0 = 1/2 makes the local-power factor degenerate")
    if not (0.0 < mu0 < 1.0) or not (0.0 < pi0 < 1.0):
        raise ConfigurationError(f"mu0 = {mu0}, pi0 = {pi0} outside (0,1)")
    if phi_sq <= 0.0:
        raise ConfigurationError("phi_sq must be positive")
    return (
        2.0
        * math.sqrt(1.0 - pi0)
        * math.sqrt(mu0 * (1.0 - mu0))
        / (math.sqrt(phi_sq) * (1.0 - 2.0 * mu0))
    )


def stationary_cov_var1(phi_diag, sigma_vv) -> np.ndarray:
    """Stationary covariance of a diagonal VAR(1): Gamma_ij = S_ij/(1 - phi_i*phi_j)."""
    phi = np.atleast_1d(np.asarray(phi_diag, dtype=np.float64))
    sigma = np.atleast_2d(np.asarray(sigma_vv, dtype=np.float64))
    if np.any(np.abs(phi) >= 1.0):
        raise ConfigurationError("VAR slopes must lie inside the unit circle")
    return sigma / (1.0 - np.outer(phi, phi))


@dataclass
class LocalPowerInputs:
    """Population quantities entering the noncentrality formulas.

    The pool is ordered with the stationary block (size p1, indices 1..p1)
    first and the persistent block (size p - p1) after it. For an
    all-stationary pool, p1 = p and the persistent fields stay None; for an
    all-persistent pool, p1 = 0. Active predictors are keyed by 1-based
    global index with values beta*.
    """

    mu0: float
    pi0: float
    phi_sq: float
    p: int
    stationary_moments: Optional[np.ndarray] = None
    innovation_cov: Optional[np.ndarray] = None
    c: Optional[np.ndarray] = None
    active_stationary: Mapping[int, float] = field(default_factory=dict)
    active_persistent: Mapping[int, float] = field(default_factory=dict)

    @property
    def p1(self) -> int:
        return 0 if self.stationary_moments is None else self.stationary_moments.shape[0]

    @property
    def p2(self) -> int:
        return 0 if self.c is None else np.atleast_1d(self.c).shape[0]

    def g(self) -> float:
        return g_factor(self.mu0, self.pi0, self.phi_sq)


def _stationary_terms(inputs: LocalPowerInputs) -> np.ndarray:
    """Per-pool-column shift contributions in the stationary block."""
    gamma = np.atleast_2d(np.asarray(inputs.stationary_moments, dtype=np.float64))
    p1 = gamma.shape[0]
    if gamma.shape != (p1, p1):
        raise DataError("stationary moment matrix must be square")
    if not inputs.active_stationary:
        return np.zeros(p1)
    terms = np.zeros(p1)
    for j in range(p1):
        acc = 0.0
        for i, beta in inputs.active_stationary.items():
            if not (1 <= i <= p1):
                raise DataError(f"stationary active index {i} outside 1..{p1}")
            acc += beta * gamma[i - 1, j] / math.sqrt(gamma[j, j])
        terms[j] = acc
    return terms


def _persistent_terms(inputs: LocalPowerInputs) -> np.ndarray:
    """Per-pool-column shift contributions in the persistent block."""
    c = np.atleast_1d(np.asarray(inputs.c, dtype=np.float64))
    sigma = np.atleast_2d(np.asarray(inputs.innovation_cov, dtype=np.float64))
    p2 = c.shape[0]
    if sigma.shape != (p2, p2):
        raise DataError("innovation covariance must match the c vector")
    if np.any(c <= 0.0):
        raise DataError("noncentrality parameters c must be positive")
    if not inputs.active_persistent:
        return np.zeros(p2)
    offset = inputs.p1
    terms = np.zeros(p2)
    for j in range(p2):
        acc = 0.0
        for gi, beta in inputs.active_persistent.items():
            i = gi - offset
            if not (1 <= i <= p2):
                raise DataError(
                    f"persistent active index {gi} outside {offset + 1}..{offset + p2}"
                )
            acc += (
                beta
                * sigma[i - 1, j]
                / math.sqrt(sigma[j, j])
                * math.sqrt(2.0 * c[j])
                / (c[i - 1] + c[j])
            )
        terms[j] = acc
    return terms


def noncentrality_stationary(inputs: LocalPowerInputs) -> float:
    """Mean shift for an all-stationary pool: g/p * sum_j (sum_i beta_i*E[x_i x_j]/sqrt(E[x_j^2]))^2."""
    if inputs.stationary_moments is None:
        raise DataError("stationary moments are required")
    if inputs.active_persistent:
        raise DataError("persistent actives present; use noncentrality_mixed")
    if inputs.p1 != inputs.p:
        raise DataError("stationary moments must cover the whole pool")
    terms = _stationary_terms(inputs)
    return inputs.g() * float(np.sum(terms**2)) / inputs.p


def noncentrality_persistent(inputs: LocalPowerInputs) -> float:
    """Mean shift for an all-persistent pool (slopes 1 - c_j/n^alpha)."""
    if inputs.c is None or inputs.innovation_cov is None:
        raise DataError("persistent parameters are required")
    if inputs.active_stationary:
        raise DataError("stationary actives present; use noncentrality_mixed")
    if inputs.p2 != inputs.p:
        raise DataError("persistent parameters must cover the whole pool")
    terms = _persistent_terms(inputs)
    return inputs.g() * float(np.sum(terms**2)) / inputs.p


def noncentrality_equal_c(inputs: LocalPowerInputs) -> float:
    """Equal-c reduction of the persistent shift: the 2c_j/(c_i+c_j)^2 weight
    collapses to 1/(2c), pulled out of the squared sums."""
    c = np.atleast_1d(np.asarray(inputs.c, dtype=np.float64))
    if np.ptp(c) != 0.0:
        raise DataError("equal-c reduction needs identical c across columns")
    c0 = float(c[0])
    sigma = np.atleast_2d(np.asarray(inputs.innovation_cov, dtype=np.float64))
    offset = inputs.p1
    total = 0.0
    for j in range(inputs.p2):
        acc = 0.0
        for gi, beta in inputs.active_persistent.items():
            i = gi - offset
            acc += beta * sigma[i - 1, j] / math.sqrt(sigma[j, j])
        total += acc * acc
    return inputs.g() * total / (2.0 * c0) / inputs.p


def noncentrality_mixed(inputs: LocalPowerInputs) -> float:
    """Mean shift when the pool blends both blocks; the two blocks add,
    cross-block terms vanish in the limit."""
    if inputs.p1 + inputs.p2 != inputs.p:
        raise DataError(
            f"blocks of size {inputs.p1} and {inputs.p2} do not partition p = {inputs.p}"
        )
    total = 0.0
    if inputs.p1 > 0:
        total += float(np.sum(_stationary_terms(inputs) ** 2))
    if inputs.p2 > 0:
        total += float(np.sum(_persistent_terms(inputs) ** 2))
    return inputs.g() * total / inputs.p


class KeyPlayerChoice(Enum):
    PICK_STATIONARY = "stationary"
    PICK_PERSISTENT = "persistent"


class KeyPlayerPrediction(NamedTuple):
    choice: KeyPlayerChoice
    boundary: bool


def keyplayer_prediction(
    beta_a_star: float,
    e_xa_sq: float,
    beta_b_star: float,
    sigma_vb_sq: float,
    c_b: float,
) -> KeyPlayerPrediction:
    """Which of two active predictors the argmax screen settles on.

    With a stationary active x_a and a persistent active x_b, the screen
    asymptotically picks x_b iff beta_b*^2 exceeds beta_a*^2 scaled by the
    ratio of the two predictors' variances E[x_a^2] / (sigma_vb^2 / 2c_b).
    Equality is classified as stationary with the boundary flag set.
    """
    if e_xa_sq <= 0.0 or sigma_vb_sq <= 0.0 or c_b <= 0.0:
        raise ConfigurationError("variances and c_b must be positive")
    lhs = beta_b_star**2
    rhs = e_xa_sq / (sigma_vb_sq / (2.0 * c_b)) * beta_a_star**2
    if lhs > rhs:
        return KeyPlayerPrediction(KeyPlayerChoice.PICK_PERSISTENT, False)
    return KeyPlayerPrediction(KeyPlayerChoice.PICK_STATIONARY, lhs == rhs)


def are_ratio() -> float:
    """Pitman asymptotic relative efficiency of the raw vs enhanced test.

    The enhanced statistic's noncentrality is twice the raw one's, so the
    ratio is exactly 1/2 regardless of the DGP.
    """
    return 0.5
