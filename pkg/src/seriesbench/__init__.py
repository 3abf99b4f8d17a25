"""Temporal benchmarking toolkit.

Adjusts a noisy high-frequency time series so its block sums match a
trusted low-frequency series, via additive Denton, binding Dagum-Cholette,
or wavelet-domain coefficient replacement with SURE thresholding and
zero-sum seasonal adjustment; includes a structural-model simulator and
metrics for comparative studies.
"""

__version__ = "0.1.0"

from .classical import (
    DagumCholetteConfig,
    DentonConfig,
    aggregation_matrix,
    ar1_covariance,
    dagum_cholette_benchmark,
    denton_benchmark,
    difference_matrix,
)
from .errors import ConfigError, DataFormatError, DimensionError, NumericalError
from .metrics import mse, revision_metric
from .seasonal import (
    KalmanFilterResult,
    PeriodicSeasonalSpec,
    StateSpaceModel,
    build_periodic_model,
    fit_variances,
    kalman_filter,
    kalman_smooth,
    seasonal_adjust,
    seasonal_disturbance_cov,
)
from .series import (
    AggregationConstraint,
    BenchmarkMethod,
    BenchmarkResult,
    TimeSeries,
    aggregate,
    constraint_residual,
)
from .shrinkage import (
    LevelNoiseEstimate,
    ThresholdPlan,
    modwt_level_variance,
    soft_threshold,
    sure_lambda,
    threshold_details,
)
from .simulation import SimTriple, SimulationParams, simulate, simulate_batch
from .study import StudyConfig, StudyResult, run_method, run_study
from .uhwavelet import (
    UHBasis,
    WaveletCoefficients,
    WaveletNode,
    basis_matrix,
    build_paired_bases,
    build_uh_basis,
    duht,
    iduht,
    largest_dyadic_below,
)
from .wavelet_benchmark import (
    WaveletBenchmarkConfig,
    elementary_benchmark,
    replace_shared_coefficients,
    replacement_scale,
    wavelet_benchmark,
)

__all__ = [
    "AggregationConstraint",
    "BenchmarkMethod",
    "BenchmarkResult",
    "ConfigError",
    "DagumCholetteConfig",
    "DataFormatError",
    "DentonConfig",
    "DimensionError",
    "KalmanFilterResult",
    "LevelNoiseEstimate",
    "NumericalError",
    "PeriodicSeasonalSpec",
    "SimTriple",
    "SimulationParams",
    "StateSpaceModel",
    "StudyConfig",
    "StudyResult",
    "ThresholdPlan",
    "TimeSeries",
    "UHBasis",
    "WaveletBenchmarkConfig",
    "WaveletCoefficients",
    "WaveletNode",
    "aggregate",
    "aggregation_matrix",
    "ar1_covariance",
    "basis_matrix",
    "build_paired_bases",
    "build_periodic_model",
    "build_uh_basis",
    "constraint_residual",
    "dagum_cholette_benchmark",
    "denton_benchmark",
    "difference_matrix",
    "duht",
    "elementary_benchmark",
    "fit_variances",
    "iduht",
    "kalman_filter",
    "kalman_smooth",
    "largest_dyadic_below",
    "modwt_level_variance",
    "mse",
    "replace_shared_coefficients",
    "replacement_scale",
    "revision_metric",
    "run_method",
    "run_study",
    "seasonal_adjust",
    "seasonal_disturbance_cov",
    "simulate",
    "simulate_batch",
    "soft_threshold",
    "sure_lambda",
    "threshold_details",
    "wavelet_benchmark",
]
