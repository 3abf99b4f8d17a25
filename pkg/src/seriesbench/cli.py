"""Command-line interface.

Subcommands: ``benchmark`` (adjust one series pair), ``simulate`` (write
replicate CSVs from a parameter file), ``evaluate`` (run a comparative
study and emit report CSVs plus figures), ``basis`` (dump wavelet basis
nodes). Exit codes: 0 success, 2 bad arguments, 3 data errors, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classical import (
    DagumCholetteConfig,
    DentonConfig,
    dagum_cholette_benchmark,
    denton_benchmark,
)
from .errors import ConfigError, DataFormatError, DimensionError, NumericalError
from .io import read_series_csv, write_key_values, write_series_csv, write_table_csv
from .series import AggregationConstraint, BenchmarkResult
from .simulation import simulate_batch
from .study import (
    default_rho,
    params_from_file,
    run_study,
    study_from_file,
)
from .uhwavelet import build_paired_bases, build_uh_basis
from .wavelet_benchmark import (
    WaveletBenchmarkConfig,
    elementary_benchmark,
    wavelet_benchmark,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seriesbench",
        description="Benchmark high-frequency series against low-frequency aggregates.",
    )
    parser.add_argument(
        "--version", action="version", version=f"seriesbench {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("benchmark", help="benchmark one high/low series pair")
    bench.add_argument("--high", required=True, help="high-frequency series CSV")
    bench.add_argument("--low", required=True, help="low-frequency series CSV")
    bench.add_argument("--k", type=int, required=True, help="aggregation factor")
    bench.add_argument(
        "--method",
        required=True,
        choices=["denton1", "denton2", "dc", "elementary", "wavelet"],
    )
    bench.add_argument("--rho", type=float, help="AR(1) coefficient for method dc")
    bench.add_argument(
        "--seasonal", action="store_true",
        help="estimate and re-add a period-k seasonal (wavelet method)",
    )
    bench.add_argument(
        "--no-threshold", action="store_true",
        help="skip detail thresholding (wavelet method)",
    )
    bench.add_argument("--out", required=True, help="output CSV path")
    bench.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    bench.set_defaults(func=cmd_benchmark)

    sim = sub.add_parser("simulate", help="write simulated replicates to a directory")
    sim.add_argument("--params", required=True, help="simulation parameter file")
    sim.add_argument("--reps", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--outdir", required=True)
    sim.set_defaults(func=cmd_simulate)

    ev = sub.add_parser("evaluate", help="run a comparative simulation study")
    ev.add_argument("--study", required=True, help="study config file")
    ev.add_argument("--outdir", required=True)
    ev.add_argument("--no-figure", action="store_true", help="skip the PNG box plot")
    ev.set_defaults(func=cmd_evaluate)

    basis = sub.add_parser("basis", help="dump wavelet basis nodes as CSV")
    basis.add_argument("--n", type=int, required=True, help="series length")
    basis.add_argument(
        "--k", type=int,
        help="dump the high side of the paired bases for factor k",
    )
    basis.add_argument("--out", required=True)
    basis.set_defaults(func=cmd_basis)
    return parser


def _run_benchmark_method(args, high, low, constraint) -> BenchmarkResult:
    if args.method == "denton1":
        return denton_benchmark(high, low, constraint, DentonConfig(order_h=1))
    if args.method == "denton2":
        return denton_benchmark(high, low, constraint, DentonConfig(order_h=2))
    if args.method == "dc":
        rho = args.rho if args.rho is not None else default_rho(args.k)
        return dagum_cholette_benchmark(
            high, low, constraint, DagumCholetteConfig(rho=rho)
        )
    if args.method == "elementary":
        return elementary_benchmark(high, low, constraint)
    config = WaveletBenchmarkConfig(
        apply_thresholding=not args.no_threshold,
        seasonal_period=args.k if args.seasonal else None,
    )
    return wavelet_benchmark(high, low, constraint, config)


def cmd_benchmark(args) -> int:
    high = read_series_csv(args.high)
    low = read_series_csv(args.low)
    constraint = AggregationConstraint(args.k)
    result = _run_benchmark_method(args, high, low, constraint)

    out = Path(args.out)
    write_series_csv(out, result.benchmarked)
    report_rows = [
        ("method", result.method.value),
        ("k", args.k),
        ("n", len(high)),
        ("m", len(low)),
        ("max_constraint_residual", repr(result.max_residual)),
    ]
    for key, value in sorted(result.params.items()):
        report_rows.append((f"param_{key}", value))
    report_path = out.with_suffix(".report.csv")
    write_table_csv(report_path, ["field", "value"], report_rows)
    if not args.no_figure:
        from .plots import save_benchmark_figure

        save_benchmark_figure(out.with_suffix(".png"), high, result)
    print(
        f"wrote {out} ({result.method.value}, max residual "
        f"{result.max_residual:.3e})"
    )
    return 0


def cmd_simulate(args) -> int:
    params = params_from_file(args.params)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    triples = simulate_batch(params, args.reps, args.seed)
    for r, triple in enumerate(triples):
        high_rows = [
            (t + 1, repr(float(true)), repr(float(obs)))
            for t, (true, obs) in enumerate(
                zip(triple.true_high.values, triple.obs_high.values)
            )
        ]
        write_table_csv(
            outdir / f"rep{r:04d}_high.csv", ["t", "true_high", "obs_high"], high_rows
        )
        write_series_csv(outdir / f"rep{r:04d}_low.csv", triple.obs_low)
    manifest = {
        "sigma_mu1": params.sigma_mu1,
        "sigma_upsilon1": params.sigma_upsilon1,
        **{f"sigma_gamma{i + 1}": s for i, s in enumerate(params.sigma_gamma_init)},
        "phi": params.phi,
        "theta": params.theta,
        "sigma_phi": params.sigma_phi,
        "sigma_zeta": params.sigma_zeta,
        "sigma_omega": params.sigma_omega,
        "sigma_tau": params.sigma_tau,
        "m": params.m,
        "n": params.n,
        "k": params.k,
        "p": params.p,
        "arma_conventional": str(params.arma_conventional).lower(),
        "reps": args.reps,
        "base_seed": args.seed,
        "seeds": ",".join(str(args.seed + r) for r in range(args.reps)),
        "version": __version__,
    }
    write_key_values(outdir / "manifest.txt", manifest)
    print(f"wrote {args.reps} replicates to {outdir}")
    return 0


def cmd_evaluate(args) -> int:
    config = study_from_file(args.study)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    def progress(done: int, total: int) -> None:
        step = max(1, total // 10)
        if done % step == 0 or done == total:
            print(f"replicate {done}/{total}", file=sys.stderr)

    result = run_study(config, progress=progress)

    rows = [
        (name, repr(mean_mse), repr(revision))
        for name, mean_mse, revision in result.table_rows()
    ]
    write_table_csv(
        outdir / "results.csv", ["method", "mean_mse", "revision_metric"], rows
    )
    dist_rows = []
    for method in config.methods:
        for r in range(config.reps):
            dist_rows.append(
                (
                    method.value,
                    r,
                    repr(float(result.mse_values[method][r])),
                    int(result.kept[r]),
                )
            )
    write_table_csv(
        outdir / "mse_distribution.csv",
        ["method", "replicate", "mse", "kept"],
        dist_rows,
    )
    manifest = {
        "study": Path(args.study).name,
        "reps": config.reps,
        "base_seed": config.base_seed,
        "rho": config.rho,
        "methods": ",".join(m.value for m in config.methods),
        "trimmed_replicates": result.n_trimmed,
        "version": __version__,
    }
    write_key_values(outdir / "manifest.txt", manifest)
    if not args.no_figure:
        from .plots import save_mse_boxplot

        labels = [m.value for m in config.methods]
        samples = [result.kept_mse(m) for m in config.methods]
        save_mse_boxplot(outdir / "mse_boxplot.png", labels, samples)
    for name, mean_mse, revision in result.table_rows():
        print(f"{name:>20s}  mean_mse={mean_mse:12.2f}  revision={revision:8.2f}")
    if result.n_trimmed:
        print(f"excluded {result.n_trimmed} replicate(s) by quality control")
    return 0


def cmd_basis(args) -> int:
    if args.n < 1:
        raise DimensionError("--n must be >= 1")
    if args.k is not None:
        if args.k < 2 or args.n % args.k != 0:
            raise DimensionError("--n must be a multiple of --k (k >= 2)")
        _, basis, _ = build_paired_bases(args.n // args.k, args.k)
    else:
        basis = build_uh_basis(args.n)
    rows = [(node.level, node.index, node.s, node.b, node.e) for node in basis.nodes]
    write_table_csv(Path(args.out), ["level", "index", "s", "b", "e"], rows)
    print(f"wrote {len(rows)} nodes to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataFormatError, DimensionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
