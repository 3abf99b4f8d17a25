"""Classical benchmarking: additive Denton and binding Dagum-Cholette.

Both methods adjust a noisy high-frequency series so its block sums equal a
trusted low-frequency series. Denton minimises the roughness of the
adjustment (h-th order differences); Dagum-Cholette is a constrained GLS
under an AR(1) model for the high-frequency survey error. Dense linear
algebra throughout: series in this domain are at most a few thousand points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericalError
from .series import (
    AggregationConstraint,
    BenchmarkMethod,
    BenchmarkResult,
    TimeSeries,
    aggregate_values,
)


@dataclass(frozen=True)
class DentonConfig:
    """Order of the additive Denton difference penalty (1 or 2)."""

    order_h: int = 1

    def __post_init__(self) -> None:
        if self.order_h not in (1, 2):
            raise ValueError("order_h must be 1 or 2")


#: AR(1) coefficient recommended for quarterly series benchmarked to annual
#: totals; use 0.9 for monthly series.
DEFAULT_RHO_QUARTERLY = 0.9**3
DEFAULT_RHO_MONTHLY = 0.9


@dataclass(frozen=True)
class DagumCholetteConfig:
    """AR(1) error coefficient and optional constant-bias term."""

    rho: float = DEFAULT_RHO_QUARTERLY
    include_bias: bool = False

    def __post_init__(self) -> None:
        if not abs(self.rho) < 1:
            raise ValueError("rho must lie strictly inside (-1, 1)")


def aggregation_matrix(n: int, m: int) -> np.ndarray:
    """n-by-m block matrix of ones-columns: B' sums each length-k block."""
    if m < 1 or n < 1 or n % m != 0:
        raise DimensionError(f"cannot aggregate {n} periods into {m} blocks")
    k = n // m
    return np.kron(np.eye(m), np.ones((k, 1)))


def difference_matrix(n: int) -> np.ndarray:
    """Lower-bidiagonal first-difference matrix (first row leaves x1 intact)."""
    if n < 1:
        raise DimensionError("n must be >= 1")
    d = np.eye(n)
    idx = np.arange(1, n)
    d[idx, idx - 1] = -1.0
    return d


def _solve(a: np.ndarray, b: np.ndarray, what: str) -> np.ndarray:
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"{what} is numerically singular") from exc
    if not np.all(np.isfinite(x)):
        raise NumericalError(f"{what} produced non-finite solution")
    return x


def _validate_pair(
    high: TimeSeries, low: TimeSeries, constraint: AggregationConstraint
) -> tuple[int, int, int]:
    k = constraint.factor_k
    n = len(high)
    m = len(low)
    if n != k * m:
        raise DimensionError(
            f"high length {n} must equal factor {k} times low length {m}"
        )
    return n, m, k

def denton_benchmark(
    high: TimeSeries,
    low: TimeSeries,
    constraint: AggregationConstraint,
    config: DentonConfig = DentonConfig(),
) -> BenchmarkResult:
    """Additive Denton benchmarking of order h.

    Solves ``min_d d' A d`` subject to ``B'(high + d) = low`` with
    ``A = (D^h)'(D^h)``, via the closed form
    ``d = A^-1 B (B' A^-1 B)^-1 (low - B'high)``.
    """
    n, m, _ = _validate_pair(high, low, constraint)
    dh = np.linalg.matrix_power(difference_matrix(n), config.order_h)
    a = dh.T @ dh
    b = aggregation_matrix(n, m)
    ainv_b = _solve(a, b, "Denton penalty matrix A")
    gram = b.T @ ainv_b
    discrepancy = low.values - b.T @ high.values
    d = ainv_b @ _solve(gram, discrepancy, "Denton constraint system B'A^-1B")
    benchmarked = high.with_values(high.values + d)
    residual = low.values - aggregate_values(benchmarked.values, constraint.factor_k)
    method = BenchmarkMethod.DENTON1 if config.order_h == 1 else BenchmarkMethod.DENTON2
    return BenchmarkResult(
        benchmarked, method, residual, params={"order_h": config.order_h}
    )


def ar1_covariance(n: int, rho: float) -> np.ndarray:
    """Stationary AR(1) covariance, entry (i, j) = rho^|i-j| / (1 - rho^2).

    Unit innovation variance; the overall scale cancels inside the binding
    benchmarking solution.
    """
    if not abs(rho) < 1:
        raise ValueError("rho must lie strictly inside (-1, 1)")
    if n < 1:
        raise DimensionError("n must be >= 1")
    lags = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return rho**lags / (1.0 - rho**2)


def dagum_cholette_benchmark(
    high: TimeSeries,
    low: TimeSeries,
    constraint: AggregationConstraint,
    config: DagumCholetteConfig = DagumCholetteConfig(),
) -> BenchmarkResult:
    """Binding Dagum-Cholette benchmarking with AR(1) survey error.

    With the low series treated as noise-free, the GLS solution reduces to
    ``min_d d' V^-1 d`` subject to ``B'(high + d) = low`` where V is the
    AR(1) covariance; the minimiser is ``d = V B (B' V B)^-1 (low - B'high)``.
    When ``include_bias`` is set, a constant bias level is estimated jointly
    and the benchmarked series is the bias-corrected, constrained fit.
    """
    n, m, k = _validate_pair(high, low, constraint)
    v = ar1_covariance(n, config.rho)
    b = aggregation_matrix(n, m)
    if not config.include_bias:
        discrepancy = low.values - b.T @ high.values
        d = v @ b @ _solve(b.T @ v @ b, discrepancy, "constraint system B'VB")
        benchmarked = high.with_values(high.values + d)
    else:
        # Joint GLS for (bias, true series): minimise
        # (y - 1*bias - theta)' V^-1 (y - 1*bias - theta) s.t. B'theta = low,
        # solved through the bordered KKT system in (theta, bias, multiplier).
        vinv = _solve(v, np.eye(n), "AR(1) covariance")
        g = np.hstack([np.eye(n), np.ones((n, 1))])
        q = g.T @ vinv @ g
        c = np.hstack([b.T, np.zeros((m, 1))])
        kkt = np.block([[q, c.T], [c, np.zeros((m, m))]])
        rhs = np.concatenate([g.T @ vinv @ high.values, low.values])
        sol = _solve(kkt, rhs, "Dagum-Cholette KKT system")
        benchmarked = high.with_values(sol[:n])
    residual = low.values - aggregate_values(benchmarked.values, k)
    return BenchmarkResult(
        benchmarked,
        BenchmarkMethod.DAGUM_CHOLETTE,
        residual,
        params={"rho": config.rho, "include_bias": config.include_bias},
    )
