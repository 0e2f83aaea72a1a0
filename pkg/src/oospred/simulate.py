"""Synthetic DGPs and Monte Carlo size/power/key-player experiments.

Predictor pools follow a diagonal VAR(1) with autoregressive slope 0.50
(scheme A), 0.95 (scheme B), or a block mix (scheme C: first p1 columns at
0.50, the rest at 0.95). Innovations (u_t, v_t') are joint Gaussian with one
of three covariance layouts: identity predictor innovations with no
predictand feedback, a KMS (0.5^|i-j|) predictor block, or the KMS block
plus contemporaneous predictand-predictor covariances (-0.5)^j. Columns can
alternatively be generated as mildly integrated processes with AR slope
1 - c/n^alpha. Alternatives put local slopes beta* / n^gamma on a small
active set.

Replications are the unit of parallelism: each one is a pure function of
(spec, master_seed, rep_index) through a counter-based Philox stream keyed
by that pair, and results are aggregated by replication index, so a run is
reproducible at any parallelism degree.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np
from scipy.signal import lfilter
from scipy.special import ndtri

from . import kernels
from .exceptions import ConfigurationError, DegenerateVarianceError
from .forecast import EvalConfig, SeriesSample
from .stats import split_mse
from .variance import VarianceSource, lrv_neweywest, split_factor

STATIONARY_GAMMA = 0.25
# (1 + 2*alpha)/4 at alpha = 0.85; pairs with AR slope 1 - 10/500^0.85 ~ 0.95
PERSISTENT_ALPHA = 0.85
PERSISTENT_GAMMA = (1.0 + 2.0 * PERSISTENT_ALPHA) / 4.0


class PhiScheme(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class OmegaScheme(str, Enum):
    OMEGA0 = "omega0"
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"


_OMEGA_LABELS = {"i": OmegaScheme.OMEGA0, "ii": OmegaScheme.OMEGA1, "iii": OmegaScheme.OMEGA2}


@dataclass(frozen=True)
class ActivePredictor:
    """One active column: 1-based index, slope scale beta*, local exponent gamma."""

    index: int
    beta_star: float
    gamma: float


@dataclass(frozen=True)
class MildlyIntegratedBlock:
    """Columns regenerated as AR(1 - c/n^alpha) instead of the scheme slope."""

    columns: tuple[int, ...]
    c: tuple[float, ...]
    alpha: float


@dataclass(frozen=True)
class DgpSpec:
    n: int
    p: int
    phi_scheme: PhiScheme = PhiScheme.A
    omega_scheme: OmegaScheme = OmegaScheme.OMEGA0
    p1: Optional[int] = None
    sigma_u_sq: float = 1.0
    theta0: float = 0.0
    burn_in: int = 200
    active: tuple[ActivePredictor, ...] = ()
    mildly_integrated: Optional[MildlyIntegratedBlock] = None

    def __post_init__(self):
        object.__setattr__(self, "phi_scheme", PhiScheme(self.phi_scheme))
        object.__setattr__(self, "omega_scheme", OmegaScheme(self.omega_scheme))
        object.__setattr__(self, "active", tuple(self.active))
        if self.n < 8:
            raise ConfigurationError(f"sample size {self.n} too small")
        if self.p < 1:
            raise ConfigurationError("need at least one predictor")
        if self.burn_in < 1:
            raise ConfigurationError("burn_in must be >= 1")
        if self.sigma_u_sq <= 0:
            raise ConfigurationError("sigma_u_sq must be positive")
        if self.phi_scheme is PhiScheme.C and not (1 <= self.block_split <= self.p - 1):
            raise ConfigurationError(
                f"scheme C needs 1 <= p1 <= p-1, got p1 = {self.block_split}"
            )
        seen = set()
        for a in self.active:
            if not (1 <= a.index <= self.p):
                raise ConfigurationError(f"active index {a.index} outside 1..{self.p}")
            if a.index in seen:
                raise ConfigurationError(f"duplicate active index {a.index}")
            if not (0.0 <= a.gamma < 1.0):
                raise ConfigurationError(f"gamma = {a.gamma} outside [0, 1)")
            seen.add(a.index)
        mi = self.mildly_integrated
        if mi is not None:
            if len(mi.columns) != len(mi.c):
                raise ConfigurationError("mildly integrated columns/c length mismatch")
            if len(set(mi.columns)) != len(mi.columns):
                raise ConfigurationError("duplicate mildly integrated column")
            for col in mi.columns:
                if not (1 <= col <= self.p):
                    raise ConfigurationError(f"mildly integrated column {col} outside 1..{self.p}")
            if not (0.0 < mi.alpha < 1.0):
                raise ConfigurationError(f"alpha = {mi.alpha} outside (0,1)")
            if any(cj <= 0 for cj in mi.c):
                raise ConfigurationError("mildly integrated c must be positive")
        _system_matrices(self)  # validates positive definiteness of the joint covariance

    @property
    def block_split(self) -> int:
        """Effective p1 for scheme C (defaults to p // 2)."""
        return self.p // 2 if self.p1 is None else self.p1


def kms_covariance(p: int, rho: float = 0.5) -> np.ndarray:
    """Kac-Murdock-Szego matrix rho^|i-j|."""
    idx = np.arange(p)
    return rho ** np.abs(np.subtract.outer(idx, idx)).astype(float)


def build_omega(spec: DgpSpec) -> np.ndarray:
    """Joint (p+1)x(p+1) covariance of (u_t, v_t')."""
    p = spec.p
    omega = np.zeros((p + 1, p + 1))
    omega[0, 0] = spec.sigma_u_sq
    if spec.omega_scheme is OmegaScheme.OMEGA0:
        omega[1:, 1:] = np.eye(p)
    else:
        omega[1:, 1:] = kms_covariance(p)
    if spec.omega_scheme is OmegaScheme.OMEGA2:
        suv = (-0.5) ** np.arange(1, p + 1)
        omega[0, 1:] = suv
        omega[1:, 0] = suv
    return omega


def phi_diagonal(spec: DgpSpec) -> np.ndarray:
    if spec.phi_scheme is PhiScheme.A:
        return np.full(spec.p, 0.50)
    if spec.phi_scheme is PhiScheme.B:
        return np.full(spec.p, 0.95)
    phi = np.full(spec.p, 0.95)
    phi[: spec.block_split] = 0.50
    return phi


@lru_cache(maxsize=32)
def _system_matrices(spec: DgpSpec) -> tuple[np.ndarray, np.ndarray]:
    """(Cholesky factor of the joint covariance, VAR slope diagonal)."""
    omega = build_omega(spec)
    try:
        chol = np.linalg.cholesky(omega)
    except np.linalg.LinAlgError as exc:
        raise ConfigurationError(
            f"joint innovation covariance is not positive definite: {exc}"
        ) from exc
    return chol, phi_diagonal(spec)


def _philox_key(seed) -> np.ndarray:
    if isinstance(seed, (int, np.integer)):
        words = [int(seed), 0]
    else:
        words = [int(s) for s in seed]
        if len(words) == 1:
            words.append(0)
    if len(words) != 2:
        raise ConfigurationError("seed must be one or two integers")
    return np.array([w & 0xFFFFFFFFFFFFFFFF for w in words], dtype=np.uint64)


def generator(seed) -> np.random.Generator:
    """Counter-based generator keyed by an integer or (master, stream) pair."""
    return np.random.Generator(np.random.Philox(key=_philox_key(seed)))


def gen_gaussian_system(spec: DgpSpec, seed) -> tuple[np.ndarray, np.ndarray]:
    """n + burn_in joint draws of (u_t, v_t') with the spec's covariance."""
    chol, _ = _system_matrices(spec)
    total = spec.n + spec.burn_in
    z = generator(seed).standard_normal((total, spec.p + 1))
    w = z @ chol.T
    return np.ascontiguousarray(w[:, 0]), np.ascontiguousarray(w[:, 1:])


def _ar1_filter(slopes: np.ndarray, V: np.ndarray) -> np.ndarray:
    """x_t = slope * x_{t-1} + v_t columnwise from x_0 = 0."""
    out = np.empty_like(V)
    for val in np.unique(slopes):
        cols = slopes == val
        out[:, cols] = lfilter([1.0], [1.0, -val], V[:, cols], axis=0)
    return out


def gen_var1(spec: DgpSpec, V: np.ndarray) -> np.ndarray:
    """Diagonal VAR(1) path from the innovations; burn-in rows discarded."""
    if V.shape != (spec.n + spec.burn_in, spec.p):
        raise ConfigurationError(
            f"V has shape {V.shape}, expected {(spec.n + spec.burn_in, spec.p)}"
        )
    _, phi = _system_matrices(spec)
    return _ar1_filter(phi, V)[spec.burn_in :]


def gen_mildly_integrated(n: int, c, alpha: float, V: np.ndarray) -> np.ndarray:
    """AR columns with slope 1 - c_j/n^alpha; burn-in (rows beyond n) discarded."""
    c = np.atleast_1d(np.asarray(c, dtype=np.float64))
    V = np.atleast_2d(V)
    if V.ndim != 2 or V.shape[1] != c.shape[0]:
        raise ConfigurationError(
            f"V has {V.shape[1]} columns but c has {c.shape[0]} entries"
        )
    if V.shape[0] < n:
        raise ConfigurationError("V must include at least n rows")
    if not (0.0 < alpha < 1.0):
        raise ConfigurationError(f"alpha = {alpha} outside (0,1)")
    if np.any(c <= 0.0):
        raise ConfigurationError("c must be positive")
    rho = 1.0 - c / float(n) ** alpha
    if np.any(rho <= -1.0) or np.any(rho > 1.0):
        raise ConfigurationError(
            f"autoregressive coefficient outside (-1, 1]: {rho}"
        )
    out = np.empty_like(V)
    for j in range(c.shape[0]):
        out[:, j] = lfilter([1.0], [1.0, -rho[j]], V[:, j])
    return out[V.shape[0] - n :]


def build_response(X: np.ndarray, u: np.ndarray, spec: DgpSpec) -> np.ndarray:
    """y_{t+1} = theta0 + sum_i beta*_i / n^gamma_i * x_{i,t} + u_{t+1}.

    X and u are the n retained rows; the first response has no predictor
    term because the pre-sample predictor value is discarded with the
    burn-in (irrelevant at the sample sizes of interest).
    """
    if X.shape[0] != u.shape[0]:
        raise ConfigurationError("X and u are not aligned")
    y = spec.theta0 + u.astype(np.float64, copy=True)
    for a in spec.active:
        beta_n = a.beta_star / float(spec.n) ** a.gamma
        y[1:] += beta_n * X[:-1, a.index - 1]
    return y


def simulate_sample(spec: DgpSpec, seed) -> SeriesSample:
    """One synthetic SeriesSample, deterministic in (spec, seed)."""
    u, V = gen_gaussian_system(spec, seed)
    X = gen_var1(spec, V)
    mi = spec.mildly_integrated
    if mi is not None:
        cols = np.asarray(mi.columns, dtype=np.intp) - 1
        X[:, cols] = gen_mildly_integrated(spec.n, mi.c, mi.alpha, V[:, cols])
    y = build_response(X, u[spec.burn_in :], spec)
    return SeriesSample(
        y=y, X=X, names=tuple(f"x{j + 1}" for j in range(spec.p))
    )


# ---------------------------------------------------------------------------
# Monte Carlo machinery


@dataclass(frozen=True)
class _McPayload:
    spec: DgpSpec
    master_seed: int
    mu0_grid: tuple[float, ...]
    pi0: float
    variance_source: VarianceSource
    bandwidth: Optional[int]


def _replicate(payload: _McPayload, rep: int):
    """Aggregate statistics of one replication, for every mu0 in the grid."""
    spec = payload.spec
    sample = simulate_sample(spec, (payload.master_seed, rep))
    k0 = math.floor(spec.n * payload.pi0)
    y = sample.y
    e0 = kernels.benchmark_errors(y, k0)
    n_eval = e0.shape[0]
    p = spec.p
    x_cols = np.ascontiguousarray(sample.X.T)
    E = np.empty((n_eval, p))
    for j in range(p):
        ej, _ = kernels.marginal_errors(y, x_cols[j], k0)
        E[:, j] = ej

    sq0 = e0 * e0
    sq_e = E * E
    mean_ej = sq_e.mean(axis=0)
    source = payload.variance_source
    if source.is_newey_west:
        m = payload.bandwidth
        if m is None:
            from .variance import bandwidth_rule

            m = bandwidth_rule(spec.n, k0)
        if source.uses_null_residuals:
            phi = lrv_neweywest(e0, payload.mu0_grid[0], m).phi_sq
        else:
            phi = np.array(
                [lrv_neweywest(E[:, j], payload.mu0_grid[0], m).phi_sq for j in range(p)]
            )
    elif source.uses_null_residuals:
        eta0 = sq0 - sq0.mean()
        phi = float(np.dot(eta0, eta0)) / n_eval
    else:
        eta = sq_e - mean_ej
        phi = np.einsum("tj,tj->j", eta, eta) / n_eval
    if np.any(np.asarray(phi) <= 0.0):
        raise DegenerateVarianceError("degenerate normalizer in replication")

    gap = e0[:, None] - E
    d_n = np.einsum("tj,tj->j", gap, gap) / n_eval
    sqrt_n = math.sqrt(n_eval)

    k = len(payload.mu0_grid)
    raw = np.empty(k)
    enh = np.empty(k)
    j_raw = np.empty(k, dtype=np.int64)
    j_enh = np.empty(k, dtype=np.int64)
    for idx, mu0 in enumerate(payload.mu0_grid):
        m0 = math.floor(n_eval * mu0)
        split = split_mse(sq0, m0)
        omega = np.sqrt(split_factor(mu0) * phi)
        d_raw = sqrt_n * (split - mean_ej) / omega
        d_enhanced = d_raw + sqrt_n * d_n / omega
        raw[idx] = d_raw.mean()
        enh[idx] = d_enhanced.mean()
        j_raw[idx] = int(np.argmax(d_raw)) + 1
        j_enh[idx] = int(np.argmax(d_enhanced)) + 1
    return raw, enh, j_raw, j_enh


_POOL_PAYLOAD: Optional[_McPayload] = None


def _pool_init(payload: _McPayload) -> None:
    global _POOL_PAYLOAD
    _POOL_PAYLOAD = payload


def _pool_task(rep: int):
    return rep, _replicate(_POOL_PAYLOAD, rep)


def _mc_run(payload: _McPayload, reps: int, n_jobs: int):
    k = len(payload.mu0_grid)
    raw = np.empty((reps, k))
    enh = np.empty((reps, k))
    j_raw = np.empty((reps, k), dtype=np.int64)
    j_enh = np.empty((reps, k), dtype=np.int64)
    if n_jobs <= 1:
        for rep in range(reps):
            raw[rep], enh[rep], j_raw[rep], j_enh[rep] = _replicate(payload, rep)
    else:
        chunk = max(1, reps // (n_jobs * 8))
        with ProcessPoolExecutor(
            max_workers=n_jobs, initializer=_pool_init, initargs=(payload,)
        ) as pool:
            for rep, result in pool.map(_pool_task, range(reps), chunksize=chunk):
                raw[rep], enh[rep], j_raw[rep], j_enh[rep] = result
    return raw, enh, j_raw, j_enh


@dataclass
class McSummary:
    """Rejection/detection frequencies of one Monte Carlo experiment.

    ``keyplayer_freq`` maps each mu0 to a distribution over the spec's
    active predictor indices (1-based) plus an ``"other"`` bucket, based on
    the argmax of the enhanced statistic. The per-replication aggregate
    statistics are retained in ``stats_raw``/``stats_enhanced`` (one column
    per mu0) for distributional diagnostics.
    """

    experiment_id: str
    reps: int
    nominal_size: float
    mu0_grid: tuple[float, ...]
    master_seed: int
    n: int
    p: int
    rejection_freq_raw: dict[float, float]
    rejection_freq_enhanced: dict[float, float]
    keyplayer_freq: dict[float, dict[Union[int, str], float]]
    mean_stat: dict[float, float]
    sd_stat: dict[float, float]
    mean_stat_raw: dict[float, float]
    sd_stat_raw: dict[float, float]
    stats_raw: np.ndarray
    stats_enhanced: np.ndarray
    keyplayer_picks: np.ndarray

    def rows(self, kind: str) -> list[dict]:
        """CSV-ready rows; size/power rows mirror one table row per mu0."""
        if kind in ("size", "power"):
            return [
                {
                    "experiment": self.experiment_id,
                    "mu0": mu0,
                    "rejection_raw": self.rejection_freq_raw[mu0],
                    "rejection_enhanced": self.rejection_freq_enhanced[mu0],
                    "mean_enhanced": self.mean_stat[mu0],
                    "sd_enhanced": self.sd_stat[mu0],
                    "reps": self.reps,
                    "nominal": self.nominal_size,
                }
                for mu0 in self.mu0_grid
            ]
        if kind == "keyplayer":
            buckets = list(self.keyplayer_freq[self.mu0_grid[0]])
            out = []
            for bucket in buckets:
                row: dict = {"experiment": self.experiment_id, "j_hat": bucket}
                for mu0 in self.mu0_grid:
                    row[f"mu0={mu0:g}"] = self.keyplayer_freq[mu0][bucket]
                out.append(row)
            return out
        raise ConfigurationError(f"unknown summary kind {kind!r}")


def _summarize(
    payload: _McPayload,
    reps: int,
    nominal: float,
    experiment_id: str,
    n_jobs: int,
) -> McSummary:
    for mu0 in payload.mu0_grid:
        EvalConfig(n=payload.spec.n, pi0=payload.pi0, mu0=mu0)  # validates split
    if not (0.0 < nominal <= 1.0):
        raise ConfigurationError(f"nominal size {nominal} outside (0, 1]")
    if reps < 1:
        raise ConfigurationError("need at least one replication")
    raw, enh, _, j_enh = _mc_run(payload, reps, n_jobs)
    critical = float(ndtri(1.0 - nominal)) if nominal < 1.0 else -math.inf
    tracked = sorted(a.index for a in payload.spec.active)
    rej_raw: dict[float, float] = {}
    rej_enh: dict[float, float] = {}
    kp: dict[float, dict[Union[int, str], float]] = {}
    mean_e: dict[float, float] = {}
    sd_e: dict[float, float] = {}
    mean_r: dict[float, float] = {}
    sd_r: dict[float, float] = {}
    for idx, mu0 in enumerate(payload.mu0_grid):
        rej_raw[mu0] = float(np.mean(raw[:, idx] > critical))
        rej_enh[mu0] = float(np.mean(enh[:, idx] > critical))
        dist: dict[Union[int, str], float] = {}
        remaining = reps
        for j in tracked:
            count = int(np.sum(j_enh[:, idx] == j))
            dist[j] = count / reps
            remaining -= count
        dist["other"] = remaining / reps
        kp[mu0] = dist
        mean_e[mu0] = float(enh[:, idx].mean())
        sd_e[mu0] = float(enh[:, idx].std(ddof=1))
        mean_r[mu0] = float(raw[:, idx].mean())
        sd_r[mu0] = float(raw[:, idx].std(ddof=1))
    return McSummary(
        experiment_id=experiment_id,
        reps=reps,
        nominal_size=nominal,
        mu0_grid=payload.mu0_grid,
        master_seed=payload.master_seed,
        n=payload.spec.n,
        p=payload.spec.p,
        rejection_freq_raw=rej_raw,
        rejection_freq_enhanced=rej_enh,
        keyplayer_freq=kp,
        mean_stat=mean_e,
        sd_stat=sd_e,
        mean_stat_raw=mean_r,
        sd_stat_raw=sd_r,
        stats_raw=raw,
        stats_enhanced=enh,
        keyplayer_picks=j_enh,
    )


DEFAULT_MU0_GRID = (0.30, 0.35, 0.40, 0.45)


def run_size_experiment(
    spec: DgpSpec,
    mu0_grid: Sequence[float] = DEFAULT_MU0_GRID,
    reps: int = 5000,
    nominal: float = 0.10,
    master_seed: int = 0,
    pi0: float = 0.25,
    variance_source: VarianceSource = VarianceSource.ALT,
    bandwidth: Optional[int] = None,
    n_jobs: int = 1,
    experiment_id: Optional[str] = None,
) -> McSummary:
    """Null rejection frequencies; the spec must have no active predictors."""
    if spec.active:
        raise ConfigurationError("size experiment requires an empty active set")
    payload = _McPayload(
        spec, master_seed, tuple(mu0_grid), pi0, VarianceSource(variance_source), bandwidth
    )
    label = experiment_id or f"size:{spec.phi_scheme.value}:{spec.omega_scheme.value}:p={spec.p}"
    return _summarize(payload, reps, nominal, label, n_jobs)


def run_power_experiment(
    spec: DgpSpec,
    mu0_grid: Sequence[float] = DEFAULT_MU0_GRID,
    reps: int = 1000,
    nominal: float = 0.10,
    master_seed: int = 0,
    pi0: float = 0.25,
    variance_source: VarianceSource = VarianceSource.ALT,
    bandwidth: Optional[int] = None,
    n_jobs: int = 1,
    experiment_id: Optional[str] = None,
) -> McSummary:
    """Rejection frequencies under an alternative with active predictors."""
    if not spec.active:
        raise ConfigurationError("power experiment requires active predictors")
    payload = _McPayload(
        spec, master_seed, tuple(mu0_grid), pi0, VarianceSource(variance_source), bandwidth
    )
    label = experiment_id or f"power:p={spec.p}:q={len(spec.active)}"
    return _summarize(payload, reps, nominal, label, n_jobs)


def run_keyplayer_experiment(
    spec: DgpSpec,
    n_list: Sequence[int],
    mu0_grid: Sequence[float] = DEFAULT_MU0_GRID,
    reps: int = 1000,
    master_seed: int = 0,
    pi0: float = 0.25,
    variance_source: VarianceSource = VarianceSource.ALT,
    bandwidth: Optional[int] = None,
    n_jobs: int = 1,
) -> list[McSummary]:
    """Detection frequencies of the enhanced argmax, one summary per sample size.

    Frequencies are unconditional: tallied across all replications, not just
    those that reject the null.
    """
    if not spec.active:
        raise ConfigurationError("key-player experiment requires active predictors")
    out = []
    for n in n_list:
        spec_n = dataclasses.replace(spec, n=int(n))
        payload = _McPayload(
            spec_n, master_seed, tuple(mu0_grid), pi0, VarianceSource(variance_source), bandwidth
        )
        out.append(
            _summarize(payload, reps, 0.10, f"keyplayer:n={n}", n_jobs)
        )
    return out


# ---------------------------------------------------------------------------
# The experiment catalog (size scenarios A/B/C x i/ii/iii, power DGPs, and
# key-player DGPs). Power and key-player designs share a 100-column scheme-C
# pool with the third covariance layout; slope scales are chosen so that at
# n = 500 the effective slopes beta*/n^gamma land on the reference grid.

POWER_SLOPE_GRIDS: dict[str, dict[str, tuple[float, ...]]] = {
    "i": {"a": (2, 3, 4, 5), "b": (5, 6, 7, 8)},
    "ii-a": {"c": (2, 3, 4, 5), "d": (5, 6, 7, 8)},
    "ii-b": {"c": (5, 6, 7, 8), "d": (8, 9, 10, 11)},
    "iii": {
        "a": (2, 3, 4, 5),
        "b": (5, 6, 7, 8),
        "c": (2, 3, 4, 5),
        "d": (5, 6, 7, 8),
    },
}

KEYPLAYER_SLOPES: dict[str, dict[str, float]] = {
    "i": {"a": 3, "b": 6},
    "ii-a": {"c": 5, "d": 8},
    "ii-b": {"c": 7, "d": 10},
    "iii": {"a": 3, "b": 6, "c": 3, "d": 6},
    "iv-a": {"a": 2, "c": 6},
    "iv-b": {"a": 2, "c": 13},
}


def size_spec(
    scheme: str, omega: str, n: int = 500, p: int = 10, p1: Optional[int] = None
) -> DgpSpec:
    """Null DGP for one cell of the size table, e.g. ('A', 'i')."""
    try:
        phi = PhiScheme(scheme)
    except ValueError:
        raise ConfigurationError(f"unknown persistence scheme {scheme!r}") from None
    if omega not in _OMEGA_LABELS:
        raise ConfigurationError(f"unknown covariance label {omega!r} (use i/ii/iii)")
    return DgpSpec(n=n, p=p, phi_scheme=phi, omega_scheme=_OMEGA_LABELS[omega], p1=p1)


def _slot_positions(p1: int) -> dict[str, int]:
    return {"a": 1, "b": 2, "c": p1 + 1, "d": p1 + 2}


def _slot_gamma(slot: str) -> float:
    return STATIONARY_GAMMA if slot in ("a", "b") else PERSISTENT_GAMMA


def power_spec(
    dgp: str, column: int, n: int = 500, p: int = 100, p1: Optional[int] = None
) -> DgpSpec:
    """Alternative DGP for one slope column (0..3) of the power tables."""
    if dgp not in POWER_SLOPE_GRIDS:
        raise ConfigurationError(
            f"unknown power DGP {dgp!r}; expected one of {sorted(POWER_SLOPE_GRIDS)}"
        )
    grid = POWER_SLOPE_GRIDS[dgp]
    ncols = len(next(iter(grid.values())))
    if not (0 <= column < ncols):
        raise ConfigurationError(f"slope column {column} outside 0..{ncols - 1}")
    split = p // 2 if p1 is None else p1
    pos = _slot_positions(split)
    active = tuple(
        ActivePredictor(pos[slot], float(values[column]), _slot_gamma(slot))
        for slot, values in grid.items()
    )
    return DgpSpec(
        n=n,
        p=p,
        phi_scheme=PhiScheme.C,
        omega_scheme=OmegaScheme.OMEGA2,
        p1=p1,
        active=active,
    )


def keyplayer_spec(
    dgp: str, n: int = 500, p: int = 100, p1: Optional[int] = None
) -> DgpSpec:
    """DGP for one panel of the key-player detection table."""
    if dgp not in KEYPLAYER_SLOPES:
        raise ConfigurationError(
            f"unknown key-player DGP {dgp!r}; expected one of {sorted(KEYPLAYER_SLOPES)}"
        )
    split = p // 2 if p1 is None else p1
    pos = _slot_positions(split)
    active = tuple(
        ActivePredictor(pos[slot], float(beta), _slot_gamma(slot))
        for slot, beta in KEYPLAYER_SLOPES[dgp].items()
    )
    return DgpSpec(
        n=n,
        p=p,
        phi_scheme=PhiScheme.C,
        omega_scheme=OmegaScheme.OMEGA2,
        p1=p1,
        active=active,
    )
