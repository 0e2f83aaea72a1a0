"""Command-line surface: run the test on data, run simulation suites,
and dump audit datasets.

Subcommands
-----------
test                p-value grid (raw/enhanced x null/alt normalizer, one
                    column per mu0) plus key-player screening for a FRED-MD
                    format dataset.
keyplayer           key-player and top-k ranking only.
dump-dataset        canonical (date, y, x_1..x_p) CSV after alignment.
simulate-size       null rejection frequencies from a manifest.
simulate-power      rejection frequencies under an alternative DGP.
simulate-keyplayer  detection frequencies of the enhanced argmax.

Manifests are flat JSON files; see the README for the accepted keys. All
outputs are deterministic given --seed at any --threads setting.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Optional

from .exceptions import ConfigurationError, DataError, OosPredError
from .forecast import EvalConfig
from .fredmd import build_dataset, dump_dataset_csv, read_fredmd
from .screening import key_player, top_k
from .simulate import (
    DEFAULT_MU0_GRID,
    keyplayer_spec,
    power_spec,
    run_keyplayer_experiment,
    run_power_experiment,
    run_size_experiment,
    size_spec,
)
from .stats import aggregate_stats
from .variance import VarianceSource

SCHEMA_VERSION = "1"

_VARIANT_SOURCES = {
    "plain": (VarianceSource.NULL, VarianceSource.ALT),
    "nw": (VarianceSource.NW_NULL, VarianceSource.NW_ALT),
}


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--mu0",
        action="append",
        type=float,
        default=None,
        help="evaluation-split fraction; repeat for a grid (default 0.30 0.35 0.40 0.45)",
    )
    sub.add_argument("--pi0", type=float, default=0.25, help="estimation-window fraction")
    sub.add_argument(
        "--variance",
        choices=[v.value for v in VarianceSource],
        default=VarianceSource.ALT.value,
        help="long-run variance source",
    )
    sub.add_argument("--bandwidth", type=int, default=None, help="Newey-West lag truncation")
    sub.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    sub.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
    sub.add_argument("--out", default=None, help="write machine-readable output here")
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="parallelism degree (results are identical at any setting)",
    )


def _add_data_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("data", help="FRED-MD format CSV file")
    sub.add_argument("--target", required=True, help="predictand series mnemonic")
    sub.add_argument(
        "--predictors",
        default=None,
        help="comma-separated predictor mnemonics (default: every other series)",
    )
    sub.add_argument(
        "--predictors-file",
        default=None,
        help="file with one predictor mnemonic per line",
    )
    sub.add_argument(
        "--no-transform",
        action="store_true",
        help="values are already transformed; ignore the transform codes",
    )
    sub.add_argument("--top-k", type=int, default=6, help="ranking depth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oospred",
        description="Out-of-sample predictability tests with many candidate predictors",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_test = subs.add_parser("test", help="run the predictability test on a dataset")
    _add_data_flags(p_test)
    _add_common_flags(p_test)
    p_test.set_defaults(func=cmd_test)

    p_kp = subs.add_parser("keyplayer", help="key-player screening on a dataset")
    _add_data_flags(p_kp)
    _add_common_flags(p_kp)
    p_kp.add_argument(
        "--statistic",
        choices=["enhanced", "raw"],
        default="enhanced",
        help="which statistic ranks the predictors",
    )
    p_kp.set_defaults(func=cmd_keyplayer)

    p_dump = subs.add_parser("dump-dataset", help="dump the aligned dataset as CSV")
    _add_data_flags(p_dump)
    p_dump.add_argument("--out", default=None, help="output path (default stdout)")
    p_dump.set_defaults(func=cmd_dump_dataset)

    for kind in ("size", "power", "keyplayer"):
        p_sim = subs.add_parser(
            f"simulate-{kind}", help=f"run a {kind} Monte Carlo experiment"
        )
        p_sim.add_argument("manifest", help="JSON experiment manifest")
        _add_common_flags(p_sim)
        p_sim.set_defaults(func=cmd_simulate, sim_kind=kind)

    return parser


def _mu0_grid(args) -> tuple[float, ...]:
    return tuple(args.mu0) if args.mu0 else DEFAULT_MU0_GRID


def _predictor_list(args, panel) -> list[str]:
    if args.predictors and args.predictors_file:
        raise ConfigurationError("give either --predictors or --predictors-file, not both")
    if args.predictors:
        return [s.strip() for s in args.predictors.split(",") if s.strip()]
    if args.predictors_file:
        with open(args.predictors_file, encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip()]
    return [name for name in panel.names if name != args.target]


def _load_sample(args):
    panel = read_fredmd(args.data)
    predictors = _predictor_list(args, panel)
    sample, report = build_dataset(
        panel, args.target, predictors, transform=not args.no_transform
    )
    return sample, report


def _write_output(args, payload: dict, csv_rows: list[dict]) -> None:
    if not args.out:
        return
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        if csv_rows:
            writer = csv.DictWriter(buf, fieldnames=list(csv_rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in csv_rows:
                writer.writerow(row)
        text = buf.getvalue()
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _variant_grid(sample, args, mu0_grid):
    """Statistics for raw/enhanced x null/alt normalizer at every mu0."""
    from .forecast import forecast_error_panel

    family = "nw" if args.variance.startswith("nw") else "plain"
    null_source, alt_source = _VARIANT_SOURCES[family]
    base = EvalConfig(n=sample.n, pi0=args.pi0, mu0=mu0_grid[0])
    panel = forecast_error_panel(sample, base, threads=args.threads)
    grid: dict[str, dict[float, dict]] = {}
    stats_by_mu0 = {}
    for mu0 in mu0_grid:
        for source, tag in ((null_source, "null"), (alt_source, "alt")):
            config = EvalConfig(
                n=sample.n,
                pi0=args.pi0,
                mu0=mu0,
                variance_source=source,
                bandwidth=args.bandwidth,
            )
            stats = aggregate_stats(panel, config, names=sample.names)
            if source is alt_source:
                stats_by_mu0[mu0] = stats
            for label, stat, pv in (
                (f"raw|{tag}", stats.aggregate_raw, stats.pvalue_raw),
                (f"enhanced|{tag}", stats.aggregate_enhanced, stats.pvalue_enhanced),
            ):
                grid.setdefault(label, {})[mu0] = {"stat": stat, "pvalue": pv}
    return grid, stats_by_mu0, panel


def _print_grid(grid, mu0_grid, value: str) -> None:
    header = "variant".ljust(16) + "".join(f"mu0={mu0:<8g}" for mu0 in mu0_grid)
    print(header)
    for label, per_mu0 in grid.items():
        cells = "".join(f"{per_mu0[mu0][value]:<12.3f}" for mu0 in mu0_grid)
        print(label.ljust(16) + cells)


def cmd_test(args) -> int:
    sample, report = _load_sample(args)
    mu0_grid = _mu0_grid(args)
    grid, stats_by_mu0, _ = _variant_grid(sample, args, mu0_grid)
    k0 = EvalConfig(n=sample.n, pi0=args.pi0, mu0=mu0_grid[0]).k0

    print(f"dataset: {report.summary()}")
    print(f"n = {sample.n}, k0 = {k0}, evaluation window = {sample.n - k0}")
    print("\np-values (right tail):")
    _print_grid(grid, mu0_grid, "pvalue")
    keyplayers = {}
    for mu0 in mu0_grid:
        rep = key_player(stats_by_mu0[mu0], k=args.top_k)
        keyplayers[mu0] = rep
        names = ", ".join(f"{name}" for _, name, _ in rep.top_k)
        print(f"\nmu0={mu0:g}: key player = {rep.top_k[0][1]} (top {args.top_k}: {names})")

    payload = {
        "schema": SCHEMA_VERSION,
        "n": sample.n,
        "k0": k0,
        "pi0": args.pi0,
        "dataset": report.summary(),
        "pvalues": {
            label: {f"{mu0:g}": cell for mu0, cell in per_mu0.items()}
            for label, per_mu0 in grid.items()
        },
        "keyplayer": {
            f"{mu0:g}": {
                "j_hat": rep.j_hat,
                "j_hat_enhanced": rep.j_hat_enhanced,
                "tie": rep.tie_flag,
                "top_k": [
                    {"index": j, "name": name, "stat": value}
                    for j, name, value in rep.top_k
                ],
            }
            for mu0, rep in keyplayers.items()
        },
    }
    csv_rows = [
        {
            "variant": label,
            "mu0": mu0,
            "stat": cell["stat"],
            "pvalue": cell["pvalue"],
        }
        for label, per_mu0 in grid.items()
        for mu0, cell in per_mu0.items()
    ]
    _write_output(args, payload, csv_rows)
    return 0


def cmd_keyplayer(args) -> int:
    sample, report = _load_sample(args)
    mu0_grid = _mu0_grid(args)
    use_enhanced = args.statistic == "enhanced"
    print(f"dataset: {report.summary()}")
    rankings = {}
    for mu0 in mu0_grid:
        config = EvalConfig(
            n=sample.n,
            pi0=args.pi0,
            mu0=mu0,
            variance_source=VarianceSource(args.variance),
            bandwidth=args.bandwidth,
        )
        from .stats import evaluate

        stats = evaluate(sample, config, threads=args.threads)
        ranked = top_k(stats, args.top_k, use_enhanced=use_enhanced)
        rankings[mu0] = ranked
        listing = ", ".join(f"{name} ({value:.2f})" for _, name, value in ranked)
        print(f"mu0={mu0:g}: {listing}")
    payload = {
        "schema": SCHEMA_VERSION,
        "statistic": args.statistic,
        "rankings": {
            f"{mu0:g}": [
                {"index": j, "name": name, "stat": value} for j, name, value in ranked
            ]
            for mu0, ranked in rankings.items()
        },
    }
    csv_rows = [
        {"mu0": mu0, "rank": r + 1, "index": j, "name": name, "stat": value}
        for mu0, ranked in rankings.items()
        for r, (j, name, value) in enumerate(ranked)
    ]
    _write_output(args, payload, csv_rows)
    return 0


def cmd_dump_dataset(args) -> int:
    sample, report = _load_sample(args)
    text = dump_dataset_csv(sample, report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {report.n} rows to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            manifest = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"manifest {path}: invalid JSON ({exc})") from None
    if not isinstance(manifest, dict):
        raise DataError(f"manifest {path}: expected a JSON object")
    return manifest


def cmd_simulate(args) -> int:
    manifest = _load_manifest(args.manifest)
    kind = args.sim_kind
    mu0_grid = tuple(args.mu0) if args.mu0 else tuple(manifest.get("mu0", DEFAULT_MU0_GRID))
    reps = args.reps or int(manifest.get("reps", 1000))
    seed = args.seed if args.seed is not None else int(manifest.get("seed", 0))
    nominal = float(manifest.get("nominal", 0.10))
    common = dict(
        mu0_grid=mu0_grid,
        reps=reps,
        master_seed=seed,
        pi0=args.pi0,
        variance_source=VarianceSource(args.variance),
        bandwidth=args.bandwidth,
        n_jobs=args.threads,
    )
    started = time.monotonic()
    print(f"running {kind} experiment ({reps} replications)...", file=sys.stderr)

    if kind == "size":
        scenario = str(manifest.get("scenario", ""))
        try:
            scheme, omega = scenario.split("-", maxsplit=1)
        except ValueError:
            raise ConfigurationError(
                f"manifest scenario {scenario!r} must look like 'A-i'"
            ) from None
        spec = size_spec(
            scheme,
            omega,
            n=int(manifest.get("n", 500)),
            p=int(manifest.get("p", 10)),
            p1=manifest.get("p1"),
        )
        summaries = [run_size_experiment(spec, nominal=nominal, **common)]
        rows_kind = "size"
    elif kind == "power":
        dgp = str(manifest.get("dgp", ""))
        column = manifest.get("slope_column", "all")
        columns = range(4) if column == "all" else [int(column)]
        summaries = []
        for col in columns:
            spec = power_spec(
                dgp,
                col,
                n=int(manifest.get("n", 500)),
                p=int(manifest.get("p", 100)),
                p1=manifest.get("p1"),
            )
            summary = run_power_experiment(
                spec, nominal=nominal, experiment_id=f"power:{dgp}:col={col}", **common
            )
            summaries.append(summary)
        rows_kind = "power"
    else:
        dgp = str(manifest.get("dgp", ""))
        n_list = [int(v) for v in manifest.get("n_list", [manifest.get("n", 500)])]
        spec = keyplayer_spec(
            dgp, n=n_list[0], p=int(manifest.get("p", 100)), p1=manifest.get("p1")
        )
        common.pop("n_jobs")
        summaries = run_keyplayer_experiment(
            spec, n_list, n_jobs=args.threads, **common
        )
        rows_kind = "keyplayer"

    elapsed = time.monotonic() - started
    print(f"done in {elapsed:.1f}s", file=sys.stderr)

    all_rows: list[dict] = []
    for summary in summaries:
        all_rows.extend(summary.rows(rows_kind))
    for row in all_rows:
        print("  ".join(f"{k}={v}" for k, v in row.items()))
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "seed": seed,
        "reps": reps,
        "results": all_rows,
    }
    _write_output(args, payload, all_rows)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OosPredError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
