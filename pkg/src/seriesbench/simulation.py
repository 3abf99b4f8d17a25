"""Structural time-series simulator for the Monte Carlo studies.

The unobserved truth is a local linear trend plus a dummy-variable seasonal:

    truth_t = mu_t + gamma_t
    mu_t    = mu_{t-1} + upsilon_t + level_shock_t
    upsilon_t = upsilon_{t-1} + slope_shock_t
    gamma_t = -(gamma_{t-1} + ... + gamma_{t-k+1}) + seasonal_shock_t

The trusted low-frequency series is the exact block sum of the truth. The
observed high-frequency series adds an autoregressive survey error,

    eps_t = phi * eps_{t-1} + theta * tau_t        (default)
    eps_t = phi * eps_{t-1} + tau_t + theta * tau_{t-1}   (arma_conventional)

The default recursion scales AR(1) innovations by theta; the flag switches
to a conventional ARMA(1,1) for sensitivity checks. Replicates are seeded
with a counter-based generator (Philox), so each one is reproducible on its
own and independent of scheduling order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TimeSeries, aggregate_values


@dataclass(frozen=True)
class SimulationParams:
    """Variances, error-process coefficients and study dimensions.

    ``n = k * m`` is the base sample; the simulator emits ``p`` further
    low-frequency blocks (``n + k*p`` high points in total) so revision
    analysis can extend the sample block by block.
    """

    sigma_mu1: float
    sigma_upsilon1: float
    sigma_gamma_init: tuple[float, ...]
    phi: float
    theta: float
    sigma_phi: float
    sigma_zeta: float
    sigma_omega: float
    sigma_tau: float
    m: int
    n: int
    k: int
    p: int
    arma_conventional: bool = False

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1 or self.k < 2 or self.p < 0:
            raise ValueError("need m >= 1, n >= 1, k >= 2, p >= 0")
        if self.n != self.k * self.m:
            raise ValueError(f"n ({self.n}) must equal k*m ({self.k * self.m})")
        if not abs(self.phi) < 1 or not abs(self.theta) < 1:
            raise ValueError("|phi| and |theta| must be < 1")
        if len(self.sigma_gamma_init) != self.k - 1:
            raise ValueError(
                f"sigma_gamma_init needs {self.k - 1} entries for k={self.k}, "
                f"got {len(self.sigma_gamma_init)}"
            )
        for name in ("sigma_mu1", "sigma_upsilon1", "sigma_phi", "sigma_zeta",
                     "sigma_omega", "sigma_tau"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if any(s < 0 for s in self.sigma_gamma_init):
            raise ValueError("sigma_gamma_init entries must be >= 0")

    @property
    def n_total(self) -> int:
        return self.n + self.k * self.p

    @property
    def m_total(self) -> int:
        return self.m + self.p


@dataclass(frozen=True)
class SimTriple:
    """One replicate: truth, noisy observation, and exact low aggregate."""

    true_high: TimeSeries
    obs_high: TimeSeries
    obs_low: TimeSeries


def simulate(params: SimulationParams, seed: int) -> SimTriple:
    """Generate one replicate, fully determined by (params, seed)."""
    k = params.k
    n_total = params.n_total
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))

    mu_init = rng.normal(0.0, params.sigma_mu1)
    upsilon_init = rng.normal(0.0, params.sigma_upsilon1)
    gamma_init = np.array(
        [rng.normal(0.0, s) for s in params.sigma_gamma_init]
    )
    level_shocks = rng.normal(0.0, params.sigma_phi, n_total)
    slope_shocks = rng.normal(0.0, params.sigma_zeta, n_total)
    seasonal_shocks = rng.normal(0.0, params.sigma_omega, n_total)
    tau = rng.normal(0.0, params.sigma_tau, n_total)

    upsilon = np.empty(n_total)
    mu = np.empty(n_total)
    upsilon[0] = upsilon_init
    mu[0] = mu_init
    for t in range(1, n_total):
        upsilon[t] = upsilon[t - 1] + slope_shocks[t]
        mu[t] = mu[t - 1] + upsilon[t] + level_shocks[t]

    gamma = np.empty(n_total)
    gamma[: k - 1] = gamma_init
    for t in range(k - 1, n_total):
        gamma[t] = -np.sum(gamma[t - k + 1 : t]) + seasonal_shocks[t]

    truth = mu + gamma

    eps = np.empty(n_total)
    if params.arma_conventional:
        eps[0] = tau[0]
        for t in range(1, n_total):
            eps[t] = params.phi * eps[t - 1] + tau[t] + params.theta * tau[t - 1]
    else:
        eps[0] = params.theta * tau[0]
        for t in range(1, n_total):
            eps[t] = params.phi * eps[t - 1] + params.theta * tau[t]

    low = aggregate_values(truth, k)
    return SimTriple(
        true_high=TimeSeries(truth, freq_per_low=k),
        obs_high=TimeSeries(truth + eps, freq_per_low=k),
        obs_low=TimeSeries(low),
    )


def simulate_batch(
    params: SimulationParams, n_reps: int, base_seed: int
) -> list[SimTriple]:
    """Independent replicates; replicate r uses seed base_seed + r."""
    if n_reps < 1:
        raise ValueError("n_reps must be >= 1")
    return [simulate(params, base_seed + r) for r in range(n_reps)]
