"""Monte Carlo study runner: simulate, benchmark with every method, score.

One replicate yields a base sample of n high-frequency points plus p extra
blocks. Each method is run on the base sample (scored by MSE against the
simulated truth) and on every extended sample (scored by the revision
metric over the base sample's final block). Replicates whose revision
metrics blow up - which happens when a benchmarked value near zero lands in
the denominator - are excluded from the averages and counted, mirroring the
quality control any production comparison would apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classical import (
    DagumCholetteConfig,
    DentonConfig,
    dagum_cholette_benchmark,
    denton_benchmark,
)
from .errors import ConfigError, DataFormatError
from .metrics import mse, revision_metric
from .series import (
    AggregationConstraint,
    BenchmarkMethod,
    BenchmarkResult,
    TimeSeries,
    constraint_residual,
)
from .simulation import SimTriple, SimulationParams, simulate
from .wavelet_benchmark import (
    WaveletBenchmarkConfig,
    elementary_benchmark,
    wavelet_benchmark,
)

#: Table row order used in reports.
METHOD_ORDER = [
    BenchmarkMethod.ORIGINAL,
    BenchmarkMethod.DENTON1,
    BenchmarkMethod.DENTON2,
    BenchmarkMethod.DAGUM_CHOLETTE,
    BenchmarkMethod.ELEMENTARY_WAVELET,
    BenchmarkMethod.WAVELET,
]


def default_rho(k: int) -> float:
    """AR(1) coefficient by high-series periodicity: 0.9 monthly, 0.9^3 else."""
    return 0.9 if k == 3 else 0.9**3


@dataclass(frozen=True)
class StudyConfig:
    """Everything needed to reproduce one comparative study."""

    params: SimulationParams
    methods: tuple[BenchmarkMethod, ...]
    reps: int
    base_seed: int
    rho: float
    seasonal: bool = True
    thresholding: bool = True
    trim_threshold: float = 200.0

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if not self.methods:
            raise ValueError("at least one method is required")


@dataclass
class StudyResult:
    """Per-replicate scores plus the retained-replicate mask."""

    config: StudyConfig
    mse_values: dict[BenchmarkMethod, np.ndarray]
    revision_values: dict[BenchmarkMethod, np.ndarray]
    kept: np.ndarray = field(default_factory=lambda: np.array([], dtype=bool))

    @property
    def n_trimmed(self) -> int:
        return int(np.sum(~self.kept))

    def mean_mse(self, method: BenchmarkMethod) -> float:
        return float(np.mean(self.mse_values[method][self.kept]))

    def mean_revision(self, method: BenchmarkMethod) -> float:
        return float(np.mean(self.revision_values[method][self.kept]))

    def kept_mse(self, method: BenchmarkMethod) -> np.ndarray:
        return self.mse_values[method][self.kept]

    def table_rows(self) -> list[tuple[str, float, float]]:
        return [
            (method.value, self.mean_mse(method), self.mean_revision(method))
            for method in METHOD_ORDER
            if method in self.mse_values
        ]


def run_method(
    method: BenchmarkMethod,
    high: TimeSeries,
    low: TimeSeries,
    constraint: AggregationConstraint,
    rho: float,
    seasonal: bool = True,
    thresholding: bool = True,
) -> BenchmarkResult:
    """Dispatch one benchmarking method with study settings."""
    if method is BenchmarkMethod.ORIGINAL:
        residual = constraint_residual(high, low, constraint)
        return BenchmarkResult(high, method, residual)
    if method is BenchmarkMethod.DENTON1:
        return denton_benchmark(high, low, constraint, DentonConfig(order_h=1))
    if method is BenchmarkMethod.DENTON2:
        return denton_benchmark(high, low, constraint, DentonConfig(order_h=2))
    if method is BenchmarkMethod.DAGUM_CHOLETTE:
        return dagum_cholette_benchmark(
            high, low, constraint, DagumCholetteConfig(rho=rho)
        )
    if method is BenchmarkMethod.ELEMENTARY_WAVELET:
        return elementary_benchmark(high, low, constraint)
    if method is BenchmarkMethod.WAVELET:
        config = WaveletBenchmarkConfig(
            apply_thresholding=thresholding,
            seasonal_period=constraint.factor_k if seasonal else None,
        )
        return wavelet_benchmark(high, low, constraint, config)
    raise ValueError(f"unknown method {method}")


def run_replicate(
    triple: SimTriple, config: StudyConfig
) -> tuple[dict[BenchmarkMethod, float], dict[BenchmarkMethod, float]]:
    """Score every configured method on one replicate."""
    params = config.params
    n, m, k, p = params.n, params.m, params.k, params.p
    constraint = AggregationConstraint(k)
    truth = TimeSeries(triple.true_high.values[:n])
    base_high = TimeSeries(triple.obs_high.values[:n], freq_per_low=k)
    base_low = TimeSeries(triple.obs_low.values[:m])

    mse_out: dict[BenchmarkMethod, float] = {}
    revision_out: dict[BenchmarkMethod, float] = {}
    for method in config.methods:
        base = run_method(
            method, base_high, base_low, constraint, config.rho,
            config.seasonal, config.thresholding,
        )
        mse_out[method] = mse(base.benchmarked, truth)
        extensions = []
        for r in range(1, p + 1):
            ext_high = TimeSeries(triple.obs_high.values[: n + k * r], freq_per_low=k)
            ext_low = TimeSeries(triple.obs_low.values[: m + r])
            extensions.append(
                run_method(
                    method, ext_high, ext_low, constraint, config.rho,
                    config.seasonal, config.thresholding,
                )
            )
        if extensions:
            revision_out[method] = revision_metric(base, extensions, k)
        else:
            revision_out[method] = 0.0
    return mse_out, revision_out


def run_study(config: StudyConfig, progress=None) -> StudyResult:
    """Run all replicates; replicate r uses seed base_seed + r."""
    methods = list(config.methods)
    mse_values = {m: np.empty(config.reps) for m in methods}
    revision_values = {m: np.empty(config.reps) for m in methods}
    for r in range(config.reps):
        triple = simulate(config.params, config.base_seed + r)
        rep_mse, rep_rev = run_replicate(triple, config)
        for method in methods:
            mse_values[method][r] = rep_mse[method]
            revision_values[method][r] = rep_rev[method]
        if progress is not None:
            progress(r + 1, config.reps)
    kept = np.ones(config.reps, dtype=bool)
    for method in methods:
        finite = np.isfinite(mse_values[method]) & np.isfinite(revision_values[method])
        kept &= finite
        kept &= revision_values[method] <= config.trim_threshold
    return StudyResult(config, mse_values, revision_values, kept)


# --- study config files ----------------------------------------------------

_STUDY_KEYS = {"methods", "reps", "seed", "rho", "trim_threshold"}
_METHOD_ALIASES = {
    "original": BenchmarkMethod.ORIGINAL,
    "denton1": BenchmarkMethod.DENTON1,
    "denton2": BenchmarkMethod.DENTON2,
    "dc": BenchmarkMethod.DAGUM_CHOLETTE,
    "dagum-cholette": BenchmarkMethod.DAGUM_CHOLETTE,
    "elementary": BenchmarkMethod.ELEMENTARY_WAVELET,
    "elementary-wavelet": BenchmarkMethod.ELEMENTARY_WAVELET,
    "wavelet": BenchmarkMethod.WAVELET,
}


def read_key_values(path) -> dict[str, str]:
    """Parse a flat key=value file; blank lines and # comments ignored."""
    pairs: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataFormatError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in pairs:
                raise DataFormatError(f"{path}:{lineno}: duplicate key {key!r}")
            pairs[key] = value
    return pairs


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise DataFormatError(f"{key} must be true or false, got {value!r}")


def params_from_mapping(pairs: dict[str, str], source: str = "config") -> SimulationParams:
    """Build SimulationParams from key=value pairs; unknown keys are errors."""
    pairs = dict(pairs)

    def take_float(key: str) -> float:
        if key not in pairs:
            raise DataFormatError(f"{source}: missing required key {key!r}")
        value = pairs.pop(key)
        try:
            return float(value)
        except ValueError as exc:
            raise DataFormatError(f"{source}: {key} must be a number, got {value!r}") from exc

    def take_int(key: str) -> int:
        raw = take_float(key)
        if raw != int(raw):
            raise DataFormatError(f"{source}: {key} must be an integer")
        return int(raw)

    m = take_int("m")
    n = take_int("n")
    k = take_int("k")
    p = take_int("p")
    gammas = tuple(take_float(f"sigma_gamma{i}") for i in range(1, k))
    arma_conventional = False
    if "arma_conventional" in pairs:
        arma_conventional = _parse_bool(pairs.pop("arma_conventional"), "arma_conventional")
    params = SimulationParams(
        sigma_mu1=take_float("sigma_mu1"),
        sigma_upsilon1=take_float("sigma_upsilon1"),
        sigma_gamma_init=gammas,
        phi=take_float("phi"),
        theta=take_float("theta"),
        sigma_phi=take_float("sigma_phi"),
        sigma_zeta=take_float("sigma_zeta"),
        sigma_omega=take_float("sigma_omega"),
        sigma_tau=take_float("sigma_tau"),
        m=m,
        n=n,
        k=k,
        p=p,
        arma_conventional=arma_conventional,
    )
    if pairs:
        raise DataFormatError(f"{source}: unknown keys {sorted(pairs)}")
    return params


def params_from_file(path) -> SimulationParams:
    return params_from_mapping(read_key_values(path), source=str(path))


def study_from_file(path) -> StudyConfig:
    """Read a study config: simulation keys plus methods/reps/seed/rho."""
    pairs = read_key_values(path)
    study_pairs = {key: pairs.pop(key) for key in list(pairs) if key in _STUDY_KEYS}
    params = params_from_mapping(pairs, source=str(path))
    if "methods" not in study_pairs:
        raise DataFormatError(f"{path}: missing required key 'methods'")
    method_names = [m.strip() for m in study_pairs["methods"].split(",") if m.strip()]
    if not method_names:
        raise ConfigError(f"{path}: zero methods requested")
    try:
        methods = tuple(_METHOD_ALIASES[name] for name in method_names)
    except KeyError as exc:
        raise DataFormatError(f"{path}: unknown method {exc.args[0]!r}") from exc
    reps = int(study_pairs.get("reps", "100"))
    seed = int(study_pairs.get("seed", "0"))
    rho = float(study_pairs.get("rho", default_rho(params.k)))
    trim = float(study_pairs.get("trim_threshold", "200"))
    return StudyConfig(
        params=params,
        methods=methods,
        reps=reps,
        base_seed=seed,
        rho=rho,
        trim_threshold=trim,
    )
