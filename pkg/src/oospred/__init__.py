"""Out-of-sample predictability testing for predictive regressions.

Pairwise sample-split MSE comparisons against an intercept-only benchmark,
aggregated into a standard-normal test over many candidate predictors, with
a power-enhanced variant, key-player screening, a Monte Carlo harness, and
a FRED-MD data pipeline.
"""

from .exceptions import (
    ConfigurationError,
    DataError,
    DegenerateVarianceError,
    FormatError,
    OosPredError,
)
from .forecast import (
    EvalConfig,
    ForecastErrorPanel,
    SeriesSample,
    benchmark_forecast_errors,
    forecast_error_panel,
    marginal_forecast_errors,
)
from .kernels import BACKEND
from .screening import KeyPlayerReport, key_player, top_k
from .simulate import (
    ActivePredictor,
    DgpSpec,
    McSummary,
    MildlyIntegratedBlock,
    OmegaScheme,
    PhiScheme,
    keyplayer_spec,
    power_spec,
    run_keyplayer_experiment,
    run_power_experiment,
    run_size_experiment,
    simulate_sample,
    size_spec,
)
from .stats import (
    PairwiseStats,
    aggregate_stats,
    enhancement_term,
    evaluate,
    pairwise_stat,
    pvalue,
    split_mse,
)
from .variance import (
    LrvEstimate,
    VarianceSource,
    bandwidth_rule,
    lrv_alt,
    lrv_neweywest,
    lrv_null,
    split_factor,
)

__version__ = "0.1.0"

__all__ = [
    "ActivePredictor",
    "BACKEND",
    "ConfigurationError",
    "DataError",
    "DegenerateVarianceError",
    "DgpSpec",
    "EvalConfig",
    "ForecastErrorPanel",
    "FormatError",
    "KeyPlayerReport",
    "LrvEstimate",
    "McSummary",
    "MildlyIntegratedBlock",
    "OmegaScheme",
    "OosPredError",
    "PairwiseStats",
    "PhiScheme",
    "SeriesSample",
    "VarianceSource",
    "aggregate_stats",
    "bandwidth_rule",
    "benchmark_forecast_errors",
    "enhancement_term",
    "evaluate",
    "forecast_error_panel",
    "key_player",
    "keyplayer_spec",
    "lrv_alt",
    "lrv_neweywest",
    "lrv_null",
    "marginal_forecast_errors",
    "pairwise_stat",
    "power_spec",
    "pvalue",
    "run_keyplayer_experiment",
    "run_power_experiment",
    "run_size_experiment",
    "simulate_sample",
    "size_spec",
    "split_factor",
    "split_mse",
    "top_k",
]
