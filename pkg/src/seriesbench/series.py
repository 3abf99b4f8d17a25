"""Core time-series containers and the flow-sum aggregation relation.

Every benchmarking method in this package consumes and produces the types
defined here. A high-frequency series of length ``n`` is tied to a
low-frequency series of length ``m`` through an aggregation factor ``k``
with ``n = k * m``; the first high-frequency observation opens the first
low-frequency block, and partial blocks are rejected rather than padded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class TimeSeries:
    """An ordered, finite, real-valued series.

    Args:
        values: Observations in level units. Must be non-empty and finite.
        start_index: Integer label of the first period (default 1).
        freq_per_low: Optional descriptive number of high-frequency periods
            per low-frequency period. Purely informational.
    """

    values: np.ndarray
    start_index: int = 1
    freq_per_low: int | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise DimensionError("series must be a non-empty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains non-finite values")
        if self.freq_per_low is not None and self.freq_per_low < 1:
            raise ValueError("freq_per_low must be a positive integer")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def with_values(self, values: np.ndarray) -> "TimeSeries":
        """Return a copy of this series with new values, same metadata."""
        return TimeSeries(values, self.start_index, self.freq_per_low)


@dataclass(frozen=True)
class AggregationConstraint:
    """Flow-sum relation between a high- and a low-frequency series.

    ``factor_k`` high-frequency periods sum to one low-frequency value.
    Only the flow-sum kind is supported.
    """

    factor_k: int
    kind: str = "flow-sum"

    def __post_init__(self) -> None:
        if int(self.factor_k) != self.factor_k or self.factor_k < 1:
            raise ValueError("factor_k must be a positive integer")
        if self.kind != "flow-sum":
            raise ValueError(f"unsupported aggregation kind: {self.kind!r}")


class BenchmarkMethod(str, Enum):
    ORIGINAL = "original"
    DENTON1 = "denton1"
    DENTON2 = "denton2"
    DAGUM_CHOLETTE = "dagum-cholette"
    ELEMENTARY_WAVELET = "elementary-wavelet"
    WAVELET = "wavelet"


@dataclass(frozen=True)
class BenchmarkResult:
    """Output of a benchmarking method.

    Args:
        benchmarked: The adjusted high-frequency series.
        method: Which method produced it.
        constraint_residual: ``low - aggregate(benchmarked)``, one entry per
            low-frequency period. Binding methods drive this to zero.
        seasonal: Estimated seasonal component, when the method removed and
            reintroduced one.
        params: Method parameters, for reporting.
    """

    benchmarked: TimeSeries
    method: BenchmarkMethod
    constraint_residual: np.ndarray
    seasonal: TimeSeries | None = None
    params: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.constraint_residual)))


def _check_divisible(n: int, k: int) -> int:
    if n % k != 0:
        raise DimensionError(
            f"series length {n} is not divisible by aggregation factor {k}"
        )
    return n // k


def aggregate(high: TimeSeries, constraint: AggregationConstraint) -> TimeSeries:
    """Sum each block of ``factor_k`` consecutive values into one low value."""
    k = constraint.factor_k
    m = _check_divisible(len(high), k)
    low = high.values.reshape(m, k).sum(axis=1)
    return TimeSeries(low, start_index=1)


def aggregate_values(values: np.ndarray, k: int) -> np.ndarray:
    """Array-level flow-sum aggregation; see :func:`aggregate`."""
    values = np.asarray(values, dtype=float)
    m = _check_divisible(values.size, k)
    return values.reshape(m, k).sum(axis=1)


def constraint_residual(
    high: TimeSeries, low: TimeSeries, constraint: AggregationConstraint
) -> np.ndarray:
    """Per-block gap ``low_s - sum(high block s)``; zero when consistent."""
    k = constraint.factor_k
    m = _check_divisible(len(high), k)
    if m != len(low):
        raise DimensionError(
            f"high length {len(high)} with factor {k} implies {m} low periods, "
            f"got {len(low)}"
        )
    return low.values - aggregate_values(high.values, k)
