"""Matplotlib figure rendering for CLI reports.

Figures are written to files next to the delimited output; no interactive
backend is required.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .series import BenchmarkResult, TimeSeries


def save_benchmark_figure(path, observed: TimeSeries, result: BenchmarkResult) -> None:
    """Observed vs benchmarked series, plus the seasonal estimate if any."""
    t = observed.start_index + np.arange(len(observed))
    has_seasonal = result.seasonal is not None
    nrows = 2 if has_seasonal else 1
    fig, axes = plt.subplots(nrows, 1, figsize=(9, 3.2 * nrows), sharex=True)
    axes = np.atleast_1d(axes)
    axes[0].plot(t, observed.values, label="observed", color="0.5", lw=1.0)
    axes[0].plot(
        t, result.benchmarked.values, label=f"benchmarked ({result.method.value})",
        color="C0", lw=1.2,
    )
    axes[0].legend(loc="best", fontsize=8)
    axes[0].set_ylabel("value")
    if has_seasonal:
        axes[1].plot(t, result.seasonal.values, color="C1", lw=1.0)
        axes[1].set_ylabel("seasonal estimate")
    axes[-1].set_xlabel("period")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_mse_boxplot(path, labels: list[str], samples: list[np.ndarray]) -> None:
    """Per-method MSE distributions across replicates."""
    fig, ax = plt.subplots(figsize=(1.6 * max(4, len(labels)), 4.5))
    ax.boxplot(samples, tick_labels=labels, showfliers=False)
    ax.set_ylabel("MSE against simulated truth")
    ax.tick_params(axis="x", rotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
