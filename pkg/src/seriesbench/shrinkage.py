"""Per-level noise estimation and SURE-calibrated soft thresholding.

Detail coefficients of a noisy series are shrunk towards zero to remove
survey noise. The threshold is chosen per level by minimising Stein's
unbiased risk estimate over the candidate set {0} union {|w_i|}, which
always contains a minimiser because the risk only decreases at those
points. The noise variance feeding SURE comes from a Haar maximal-overlap
transform of the series: squared non-boundary coefficients at level j are
averaged and rescaled by 2^j, which places the estimate on the same scale
as orthonormal wavelet coefficients (for white noise the estimate equals
the innovation variance at every level).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .series import TimeSeries
from .uhwavelet import WaveletCoefficients


@dataclass(frozen=True)
class LevelNoiseEstimate:
    """Noise variance attributed to one wavelet level."""

    level_j: int
    sigma2: float
    n_used: int

    def __post_init__(self) -> None:
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be >= 0")
        if self.n_used < 1:
            raise ValueError("n_used must be >= 1")


@dataclass(frozen=True)
class ThresholdPlan:
    """Chosen soft threshold per wavelet level."""

    lambda_by_level: dict[int, float]

    def __post_init__(self) -> None:
        for level, lam in self.lambda_by_level.items():
            if not np.isfinite(lam) or lam < 0:
                raise ValueError(f"invalid threshold {lam} for level {level}")


def soft_threshold(w, lam):
    """Shrink w towards zero by lam, clipping to zero below the threshold.

    Works elementwise on arrays. Odd in w and non-expansive.
    """
    if lam < 0:
        raise ValueError("threshold must be >= 0")
    return np.sign(w) * np.maximum(np.abs(w) - lam, 0.0)


def modwt_level_variance(series: TimeSeries, level_j: int) -> LevelNoiseEstimate:
    """Haar maximal-overlap wavelet variance at one level, boundary-free.

    Coefficients are computed under periodic extension but the first
    2^j - 1 of them, which wrap around the series start, are excluded from
    the average so the estimator stays unbiased on short series.
    """
    if level_j < 1:
        raise ValueError("level_j must be >= 1")
    x = series.values
    width = 2**level_j
    if x.size <= width:
        raise DimensionError(
            f"series of length {x.size} is too short for MODWT level {level_j}"
        )
    half = width // 2
    acc = np.zeros_like(x)
    for i in range(width):
        sign = 1.0 if i < half else -1.0
        acc += sign * np.roll(x, i)
    coeffs = acc / width
    interior = coeffs[width - 1 :]
    sigma2 = float(2.0**level_j * np.mean(interior**2))
    return LevelNoiseEstimate(level_j, sigma2, interior.size)


def sure_lambda(coeffs: np.ndarray, sigma2: float) -> float:
    """Threshold minimising SURE(lambda) over the candidates {0, |w_1|, ...}.

    SURE(lambda) = sum_i [sigma2 - 2*sigma2*1(|w_i| <= lambda)
    + min(w_i^2, lambda^2)]. Ties are broken towards the smallest lambda.
    """
    w = np.asarray(coeffs, dtype=float)
    if w.size == 0:
        raise ValueError("coefficient vector must be non-empty")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be > 0")
    abs_sorted = np.sort(np.abs(w))
    candidates = np.concatenate([[0.0], abs_sorted])
    sq_prefix = np.concatenate([[0.0], np.cumsum(abs_sorted**2)])
    # for each candidate: number of |w| <= lambda and the split of min(w^2, l^2)
    counts = np.searchsorted(abs_sorted, candidates, side="right")
    risk = (
        w.size * sigma2
        - 2.0 * sigma2 * counts
        + sq_prefix[counts]
        + candidates**2 * (w.size - counts)
    )
    return float(candidates[np.argmin(risk)])


def sure_threshold_plan(
    coeffs: WaveletCoefficients,
    levels: set[int],
    noise: dict[int, LevelNoiseEstimate],
) -> ThresholdPlan:
    """Pick one SURE threshold per requested level of a coefficient set.

    A level with zero estimated noise gets lambda = 0 (nothing to remove).
    """
    lambdas: dict[int, float] = {}
    for level in sorted(levels):
        if level not in noise:
            raise ValueError(f"no noise estimate supplied for level {level}")
        values = np.array(
            [w for (lvl, _), w in coeffs.details.items() if lvl == level]
        )
        if values.size == 0:
            raise ValueError(f"coefficients contain no level-{level} entries")
        sigma2 = noise[level].sigma2
        lambdas[level] = 0.0 if sigma2 == 0 else sure_lambda(values, sigma2)
    return ThresholdPlan(lambdas)


def apply_threshold_plan(
    coeffs: WaveletCoefficients, plan: ThresholdPlan
) -> WaveletCoefficients:
    """Soft-threshold the levels named in the plan, leave the rest alone."""
    details = {
        key: (
            float(soft_threshold(w, plan.lambda_by_level[key[0]]))
            if key[0] in plan.lambda_by_level
            else w
        )
        for key, w in coeffs.details.items()
    }
    return WaveletCoefficients(coeffs.father, details, coeffs.split_level)


def threshold_details(
    coeffs: WaveletCoefficients,
    levels: set[int],
    noise: dict[int, LevelNoiseEstimate],
) -> WaveletCoefficients:
    """SURE soft-thresholding of the listed levels; a single application.

    Soft thresholding is not idempotent, so callers must apply this exactly
    once per pipeline run.
    """
    if not levels:
        return coeffs
    return apply_threshold_plan(coeffs, sure_threshold_plan(coeffs, levels, noise))
