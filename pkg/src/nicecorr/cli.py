"""Command-line tools: ``estimate``, ``detect``, and ``simulate``.

Each subcommand is a pure function of (input bytes, configuration, seed):
running it twice with the same inputs writes the same artifact bytes, except
for the wall-clock ``runtime_ms`` column of ``bench.csv``.  Progress is
reported as one JSON line per pipeline stage on standard error, so stdout
stays empty and the output directory holds everything of value.

Configuration precedence is CLI flag > config file (``--config``, a single
JSON object of RunConfig fields) > built-in default, resolved per field.

Exit codes: 0 success, 2 bad usage or bad input, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import io as artifacts
from .bench import (
    BENCH_PERM_ITERS,
    METHODS,
    SyntheticSpec,
    run_benchmark,
    summarize_benchmark,
)
from .corr import load_csv
from .detect import ORIENTATIONS
from .errors import InputError, NumericError
from .mixture import NULL_MODES
from .pipeline import WEIGHT_MODES, run_pipeline
from .threshold import DEFAULT_T

__all__ = ["RunConfig", "main", "build_parser", "resolve_config"]


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs; every field round-trips through JSON."""

    input_path: str | None = None
    output_dir: str = "."
    lambda0: float = 0.5
    T: float = DEFAULT_T
    c_max: int | None = None
    perm_iters: int = 10_000
    alpha: float = 0.05
    null_mode: str = "theoretical"
    weight_mode: str = "posterior"
    stat_orientation: str = "complement"
    standardize: bool = False
    seed: int = 0
    threads: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


_CONFIG_FIELDS = {f.name for f in fields(RunConfig)}


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    # every default is None so resolve_config can tell "unset" from "set to
    # the default value"; real defaults live on RunConfig
    parser.add_argument("--config", metavar="FILE", help="JSON file of RunConfig fields")
    parser.add_argument(_flag("input_path"), metavar="CSV", help="input data matrix")
    parser.add_argument(_flag("output_dir"), metavar="DIR", help="artifact directory")
    parser.add_argument(_flag("lambda0"), type=float, help="quality-quantity trade-off")
    parser.add_argument("--T", type=float, help="evidence threshold multiplier")
    parser.add_argument(_flag("c_max"), type=int, help="largest community count scanned")
    parser.add_argument(_flag("perm_iters"), type=int, help="permutation iterations")
    parser.add_argument("--alpha", type=float, help="screen significance level")
    parser.add_argument(_flag("null_mode"), choices=NULL_MODES, help="null sd source")
    parser.add_argument(_flag("weight_mode"), choices=WEIGHT_MODES, help="adjacency weights")
    parser.add_argument(_flag("stat_orientation"), choices=ORIENTATIONS)
    parser.add_argument(
        "--standardize",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="z-score each column before the correlation step",
    )
    parser.add_argument("--seed", type=int, help="seed for every random draw")
    parser.add_argument("--threads", type=int, help="worker processes for simulate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nicecorr",
        description="Network-informed hard thresholding for correlation matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="full pipeline: detect communities, threshold edges")
    _add_config_flags(est)

    det = sub.add_parser("detect", help="community detection and permutation screen only")
    _add_config_flags(det)

    sim = sub.add_parser("simulate", help="planted-clique benchmark against fixed-cutoff rules")
    _add_config_flags(sim)
    sim.add_argument("--p", type=int, default=100, help="number of variables")
    sim.add_argument(
        "--clique-sizes",
        default="15,10",
        help="comma-separated planted clique sizes (default 15,10)",
    )
    sim.add_argument("--rho", type=float, default=0.5, help="within-clique correlation")
    sim.add_argument("--n", type=int, default=25, help="subjects per replicate")
    sim.add_argument("--replicates", type=int, default=100)
    sim.add_argument(
        "--methods",
        default=",".join(METHODS),
        help=f"comma-separated subset of {','.join(METHODS)}",
    )
    sim.add_argument(
        "--T-grid",
        default=None,
        help="comma-separated thresholds for the comparator methods (default: T)",
    )
    sim.add_argument(
        "--no-shuffle-nodes",
        action="store_true",
        help="keep planted cliques on contiguous node ids",
    )
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge CLI flags over config-file values over built-in defaults."""
    merged = asdict(RunConfig())
    if args.config is not None:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read config file {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"config file {args.config} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise InputError(f"config file {args.config} must hold a JSON object")
        unknown = sorted(set(loaded) - _CONFIG_FIELDS)
        if unknown:
            raise InputError(f"unknown config fields {unknown}; valid: {sorted(_CONFIG_FIELDS)}")
        merged.update(loaded)
    for name in _CONFIG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return RunConfig(**merged)


def _stage_logger(stream):
    def on_stage(name, ms, **info):
        print(json.dumps({"stage": name, "ms": ms, **info}, sort_keys=True), file=stream)
        stream.flush()

    return on_stage


def _load_input(cfg: RunConfig):
    if cfg.input_path is None:
        raise InputError("no input: pass --input-path (or set input_path in --config)")
    try:
        return load_csv(cfg.input_path)
    except OSError as exc:
        raise InputError(f"cannot read input file {cfg.input_path}: {exc}") from exc


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _run(cfg: RunConfig, stream, detect_only: bool):
    data = _load_input(cfg)
    return run_pipeline(
        data,
        lambda0=cfg.lambda0,
        T=cfg.T,
        c_max=cfg.c_max,
        perm_iters=cfg.perm_iters,
        alpha=cfg.alpha,
        null_mode=cfg.null_mode,
        weight_mode=cfg.weight_mode,
        stat_orientation=cfg.stat_orientation,
        standardize_input=cfg.standardize,
        seed=cfg.seed,
        detect_only=detect_only,
        on_stage=_stage_logger(stream),
    )


def cmd_estimate(cfg: RunConfig, stream=None) -> int:
    stream = sys.stderr if stream is None else stream
    out = _out_dir(cfg)
    res = _run(cfg, stream, detect_only=False)
    names = res.data.column_names
    artifacts.write_matrix_csv(out / "r_hat.csv", res.estimate.r_hat.values, names)
    artifacts.write_edges_csv(out / "edges.csv", res.corr, res.zm, res.estimate, names)
    artifacts.write_partition_json(out / "partition.json", res.partition, names)
    artifacts.write_mixture_json(out / "mixture.json", res.fit)
    artifacts.write_summary_json(out / "summary.json", res.estimate)
    return 0


def cmd_detect(cfg: RunConfig, stream=None) -> int:
    stream = sys.stderr if stream is None else stream
    out = _out_dir(cfg)
    res = _run(cfg, stream, detect_only=True)
    names = res.data.column_names
    artifacts.write_partition_json(out / "partition.json", res.partition, names)
    artifacts.write_heatmap_csvs(
        out / "heatmap_weights.csv",
        out / "heatmap_corr.csv",
        res.weights,
        res.corr,
        res.partition,
        names,
    )
    return 0


def _csv_list(text: str, kind, flag: str):
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if not parts:
        raise InputError(f"{flag} must list at least one value")
    try:
        return tuple(kind(s) for s in parts)
    except ValueError as exc:
        raise InputError(f"bad {flag} value: {exc}") from exc


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace, stream=None) -> int:
    stream = sys.stderr if stream is None else stream
    out = _out_dir(cfg)
    spec = SyntheticSpec(
        p=args.p,
        clique_sizes=_csv_list(args.clique_sizes, int, "--clique-sizes"),
        rho=args.rho,
        n=args.n,
        shuffle_nodes=not args.no_shuffle_nodes,
        seed=cfg.seed,
    )
    methods = _csv_list(args.methods, str, "--methods")
    T_grid = (cfg.T,) if args.T_grid is None else _csv_list(args.T_grid, float, "--T-grid")
    # the benchmark default is lighter than the interactive 10k; honor an
    # explicit perm_iters from the flag or file, otherwise use the bench default
    perm_iters = cfg.perm_iters if cfg.perm_iters != RunConfig().perm_iters else BENCH_PERM_ITERS
    log = _stage_logger(stream)

    t0 = time.perf_counter()
    result = run_benchmark(
        spec,
        methods=methods,
        replicates=args.replicates,
        T_grid=T_grid,
        perm_iters=perm_iters,
        threads=cfg.threads,
    )
    log(
        "benchmark",
        int(round((time.perf_counter() - t0) * 1000.0)),
        replicates=args.replicates,
        methods=list(methods),
    )

    t0 = time.perf_counter()
    artifacts.write_bench_csv(out / "bench.csv", result)
    artifacts.write_bench_summary_csv(out / "bench_summary.csv", summarize_benchmark(result))
    log("write", int(round((time.perf_counter() - t0) * 1000.0)), rows=len(result.rows))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "estimate":
            return cmd_estimate(cfg)
        if args.command == "detect":
            return cmd_detect(cfg)
        return cmd_simulate(cfg, args)
    except InputError as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return 2
    except NumericError as exc:
        print(json.dumps({"error": "numeric", "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
