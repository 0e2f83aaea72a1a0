"""Key-player screening: which predictor drives a rejection.

The key player is the argmax of the per-predictor statistics, i.e. the
predictor whose marginal model improves most on the benchmark's
out-of-sample MSE. Indices reported here are 1-based predictor numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError
from .stats import PairwiseStats


@dataclass(frozen=True)
class KeyPlayerReport:
    j_hat: int
    j_hat_enhanced: int
    top_k: tuple[tuple[int, str, float], ...]
    tie_flag: bool


def _argmax_with_tie(values: np.ndarray) -> tuple[int, bool]:
    best = int(np.argmax(values))
    tie = int(np.sum(values == values[best])) > 1
    return best, tie


def top_k(stats: PairwiseStats, k: int, use_enhanced: bool = True) -> list[tuple[int, str, float]]:
    """The k largest statistics as (1-based index, name, value), descending.

    Ranks by the enhanced statistic by default; ties resolve to the
    smaller index so permuting the input columns returns the same set.
    """
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    values = stats.d_enhanced if use_enhanced else stats.d_raw
    k = min(k, stats.p)
    order = np.lexsort((np.arange(stats.p), -values))[:k]
    return [(int(j) + 1, stats.names[j], float(values[j])) for j in order]


def key_player(stats: PairwiseStats, k: int = 5) -> KeyPlayerReport:
    """Argmax screening plus a top-k ranking by the enhanced statistic."""
    if stats.p < 1:
        raise ConfigurationError("no predictors to screen")
    j_raw, tie_raw = _argmax_with_tie(stats.d_raw)
    j_enh, tie_enh = _argmax_with_tie(stats.d_enhanced)
    return KeyPlayerReport(
        j_hat=j_raw + 1,
        j_hat_enhanced=j_enh + 1,
        top_k=tuple(top_k(stats, k)),
        tie_flag=tie_raw or tie_enh,
    )
