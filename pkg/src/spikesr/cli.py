"""Command-line interface.

Subcommands::

    spikesr gen        -c config.json [-o DIR]        draw a spike train
    spikesr sweep-rho  -c config.json -o DIR          score all candidate rates
    spikesr recover    -c config.json [-o DIR]        run one recovery
    spikesr optimality -c config.json -o DIR          K_x/K_a scaling study
    spikesr bench      -c config.json -o DIR          method comparison + timing
    spikesr validate   [--fast]                       built-in property suite

Exit codes: 0 success, 1 runtime or validation failure, 2 configuration
error.  Data files are byte-deterministic for fixed config and seed; wall
clock measurements go to separate timing files.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import (
    ConfigError,
    experiment_from_config,
    load_config,
    oracle_from_config,
    spike_from_config,
)
from .errors import SpikeSRError
from .pipeline import (
    METHODS,
    bench_experiment,
    error_factors,
    match_to_truth,
    optimality_experiment,
    rho_sweep_experiment,
    run_method,
)
from .reporting import complex_pairs, dumps_json, git_describe, write_csv, write_json
from .selfcheck import run_all

log = logging.getLogger(__name__)


def _manifest(command: str, cfg: dict, args) -> dict:
    return {
        "command": command,
        "config": cfg,
        "seed_override": args.seed,
        "method_override": getattr(args, "method", None),
        "version": __version__,
        "git": git_describe(),
    }


def _apply_overrides(cfg: dict, args) -> dict:
    cfg = dict(cfg)
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def _out_dir(args) -> Path | None:
    if args.out is None:
        return None
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_gen(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    spike, cluster = spike_from_config(cfg)
    payload = {
        "schema": 1,
        "nodes": [float(x) for x in spike.nodes],
        "amps": complex_pairs(spike.amps),
    }
    if cluster is not None:
        payload["geometry"] = {
            "sizes": list(cluster.sizes), "nu": list(cluster.nu),
            "eta": cluster.eta, "delta": cluster.delta,
            "multiplicities": list(cluster.multiplicities),
            "partition": [list(b) for b in cluster.partition],
        }
    sys.stdout.write(dumps_json(payload))
    out = _out_dir(args)
    if out is not None:
        write_json(out / "spike.json", payload)
        write_json(out / "manifest.json", _manifest("gen", cfg, args))
    return 0


def cmd_sweep(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    spec = experiment_from_config(cfg)
    if spec.srf is None:
        raise ConfigError("sweep-rho needs 'srf' or 'delta'")
    res = rho_sweep_experiment(spec)
    out = _out_dir(args)
    if out is not None:
        write_csv(out / "sweep.csv",
                  ["rho", "sigma", "sqrt_sigma", "delta_rho", "ratio"], res.rows)
        write_csv(out / "sweep_timing.csv", ["rho", "wall_time_ns"], res.timing_rows)
        write_json(out / "manifest.json", _manifest("sweep-rho", cfg, args))
    sys.stdout.write(dumps_json({
        "selected_rho": res.selected_rho,
        "interval": [res.meta["interval_lo"], res.meta["interval_hi"]],
        "n_candidates": len(res.rows),
    }))
    return 0


def cmd_recover(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    oracle, spike, cluster = oracle_from_config(cfg)
    method = args.method or cfg.get("method", "edp")
    if method not in METHODS:
        raise ConfigError(f"method must be one of {list(METHODS)}, got {method!r}")
    n_clusters = cluster.n_clusters if cluster is not None else int(cfg.get("M", 1))
    n_bins = cfg.get("n_bins")
    if method == "dp" and n_bins is None:
        if cluster is None:
            raise ConfigError("method 'dp' needs 'n_bins' (or generator geometry)")
        n_bins = int(np.ceil(3.0 / cluster.delta))
    t0 = time.perf_counter()
    res = run_method(method, oracle, spike.n, n_clusters,
                     n_bins=n_bins, n_rho=int(cfg.get("n_rho", 900)))
    wall = time.perf_counter() - t0
    payload = {
        "method": method,
        "est_nodes": [float(x) for x in res.est_nodes],
        "est_amps": complex_pairs(res.est_amps),
    }
    if res.plan is not None:
        payload["plan"] = {
            "rho": res.plan.rho, "t": res.plan.t, "n_samples": res.plan.n_samples,
            "interval": [res.plan.lo, res.plan.hi],
            "strategy": res.plan.strategy,
            "scores": [{"rho": s.rho, "sigma": s.sigma} for s in res.plan.scores],
        }
    # ground truth is known here by construction, so report errors
    _, errs = match_to_truth(spike.nodes, res.est_nodes)
    payload["node_errors"] = [float(e) for e in errs]
    if oracle.epsilon > 0:
        k_x, k_a = error_factors(spike, res, oracle.epsilon, oracle.omega_max)
        payload["k_x"] = [float(v) for v in k_x]
        payload["k_a"] = [float(v) for v in k_a]
    sys.stdout.write(dumps_json(payload))
    out = _out_dir(args)
    if out is not None:
        write_json(out / "result.json", payload)
        write_json(out / "timing.json", {"wall_time_s": wall})
        write_json(out / "manifest.json", _manifest("recover", cfg, args))
    return 0


def cmd_optimality(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    spec = experiment_from_config(cfg, need_grid=True)
    res = optimality_experiment(spec)
    out = _out_dir(args)
    slope_rows = [
        {"node": i, **res.slopes[i]} for i in sorted(res.slopes)
    ]
    if out is not None:
        write_csv(out / "optimality.csv",
                  ["srf", "node", "mean_kx", "median_kx", "mean_ka", "median_ka",
                   "ok_trials"], res.table)
        write_csv(out / "slopes.csv",
                  ["node", "slope_kx", "se_kx", "slope_ka", "se_ka"], slope_rows)
        write_csv(out / "failures.csv", ["srf", "ok", "failed"], res.failures)
        write_json(out / "manifest.json", _manifest("optimality", cfg, args))
    sys.stdout.write(dumps_json({
        "slopes": {str(i): res.slopes[i] for i in sorted(res.slopes)},
        "cluster_nodes": list(res.cluster_nodes),
        "witness_nodes": list(res.witness_nodes),
    }))
    return 0


def cmd_bench(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    spec = experiment_from_config(cfg, need_grid=True)
    res = bench_experiment(spec)
    out = _out_dir(args)
    if out is not None:
        write_csv(out / "bench.csv",
                  ["method", "srf", "mean_err_x1", "median_err_x1", "mean_wall_s",
                   "ok_trials", "failed"], res.accuracy_rows)
        if res.omega_rows:
            write_csv(out / "omega_scaling.csv", ["omega", "wall_s"], res.omega_rows)
        write_json(out / "manifest.json", _manifest("bench", cfg, args))
    sys.stdout.write(dumps_json({
        "rows": len(res.accuracy_rows),
        "omega_points": len(res.omega_rows),
        "x1_index": res.meta["x1_index"],
    }))
    return 0


def cmd_validate(args) -> int:
    results = run_all(fast=args.fast)
    ok = True
    for r in results:
        ok &= r.ok
        sys.stdout.write(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}\n")
    sys.stdout.write(f"{sum(r.ok for r in results)}/{len(results)} checks passed\n")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spikesr",
        description="Super-resolution of spike trains by sampling decimation.")
    parser.add_argument("--version", action="version", version=f"spikesr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=False):
        p.add_argument("-c", "--config", required=True, help="JSON config file")
        p.add_argument("-o", "--out", required=needs_out, default=None,
                       help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("gen", help="draw a spike train from a config")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep-rho", help="score all candidate decimation rates")
    common(p, needs_out=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("recover", help="run one recovery")
    common(p)
    p.add_argument("--method", choices=METHODS, default=None)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("optimality", help="noise-amplification scaling study")
    common(p, needs_out=True)
    p.set_defaults(func=cmd_optimality)

    p = sub.add_parser("bench", help="method comparison and runtime study")
    common(p, needs_out=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="run the built-in property suite")
    p.add_argument("--fast", action="store_true", help="reduced trial counts")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as e:
        sys.stderr.write(f"config error: {e}\n")
        return 2
    except (SpikeSRError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
