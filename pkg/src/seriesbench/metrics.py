"""Accuracy and stability metrics for comparing benchmarking methods."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .series import BenchmarkResult, TimeSeries


def mse(estimate: TimeSeries, truth: TimeSeries) -> float:
    """Mean squared error over the full series."""
    if len(estimate) != len(truth):
        raise DimensionError(
            f"estimate length {len(estimate)} != truth length {len(truth)}"
        )
    diff = estimate.values - truth.values
    return float(np.mean(diff**2))


def revision_metric(
    base: BenchmarkResult, extensions: list[BenchmarkResult], k: int
) -> float:
    """Mean percentage revision of the base sample's final block.

    For each extension, compute ``100 * mean(|1 - extended_t / base_t|)``
    over the last k points of the base sample, then average across
    extensions. Zero iff no extension moves those points; the identity
    method and pure pro-rata benchmarking achieve exactly zero.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    base_values = base.benchmarked.values
    n = base_values.size
    if n < k:
        raise DimensionError(f"base series shorter than one block of {k}")
    if not extensions:
        raise ValueError("at least one extension is required")
    last_block = base_values[n - k :]
    if np.any(last_block == 0):
        raise ValueError("base series has a zero value in its last block")
    total = 0.0
    for extension in extensions:
        extended = extension.benchmarked.values
        if extended.size < n:
            raise DimensionError(
                f"extension of length {extended.size} does not cover the "
                f"base range {n}"
            )
        ratios = extended[n - k : n] / last_block
        total += 100.0 * float(np.mean(np.abs(1.0 - ratios)))
    return total / len(extensions)
