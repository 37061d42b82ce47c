"""JSON problem configurations shared by the CLI subcommands.

A configuration either spells the spike out explicitly::

    {"schema": 1, "omega": 100.0, "epsilon": 0.0, "noise": "none", "seed": 7,
     "nodes": [-0.01, 0.01], "amps": [[1.0, 0.0], [0.5, -0.5]]}

or describes a clustered-geometry generator::

    {"schema": 1, "omega": 100.0, "M": 2, "sizes": [3, 2], "nu": [2, 1],
     "eta": 0.6, "srf": 6.0, "epsilon": 1e-6, "noise": "cauchy_clipped",
     "seed": 7}

with exactly one of ``delta`` or ``srf`` (``delta = 1/(srf * omega)``).
Experiment commands add ``srf_grid``, ``trials``, ``methods``, ``n_rho``,
``n_bins``, ``omega_grid`` and ``unit_amps``.
"""

from __future__ import annotations

import json

import numpy as np

from .pipeline import METHODS, ExperimentSpec, GeometrySpec
from .signal_model import (
    NOISE_KINDS,
    SpikeTrain,
    delta_for_srf,
    make_clustered_config,
    make_oracle,
)


class ConfigError(ValueError):
    """A configuration file problem, with the offending field named."""


def load_config(path) -> dict:
    """Read a JSON config; parse errors keep their line/column info."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return cfg


def _field(cfg: dict, key: str, kind, required=False, default=None):
    if key not in cfg:
        if required:
            raise ConfigError(f"missing required field '{key}'")
        return default
    try:
        if kind is float:
            return float(cfg[key])
        if kind is int:
            v = cfg[key]
            if int(v) != v:
                raise ValueError
            return int(v)
        if kind is str:
            if not isinstance(cfg[key], str):
                raise ValueError
            return cfg[key]
        if kind is bool:
            if not isinstance(cfg[key], bool):
                raise ValueError
            return cfg[key]
        if kind is list:
            if not isinstance(cfg[key], list):
                raise ValueError
            return cfg[key]
    except (TypeError, ValueError):
        pass
    raise ConfigError(f"field '{key}' must be of type {kind.__name__}, got {cfg[key]!r}")


def _amps_from(pairs, n=None):
    if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 for p in pairs):
        raise ConfigError("field 'amps' must be a list of [re, im] pairs")
    arr = np.array([complex(p[0], p[1]) for p in pairs])
    if n is not None and arr.size != n:
        raise ConfigError(f"field 'amps' has {arr.size} entries, expected {n}")
    return arr


def _delta_from(cfg: dict, omega: float) -> float:
    has_delta = "delta" in cfg
    has_srf = "srf" in cfg
    if has_delta == has_srf:
        raise ConfigError("exactly one of 'delta' or 'srf' is required")
    if has_delta:
        return _field(cfg, "delta", float, required=True)
    return delta_for_srf(_field(cfg, "srf", float, required=True), omega)


def spike_from_config(cfg: dict):
    """Build (spike, cluster_config_or_None) from a config dict."""
    omega = _field(cfg, "omega", float, required=True)
    if "nodes" in cfg:
        nodes = np.asarray(_field(cfg, "nodes", list, required=True), dtype=np.float64)
        amps = _amps_from(cfg["amps"], nodes.size) if "amps" in cfg \
            else np.ones(nodes.size, dtype=np.complex128)
        try:
            return SpikeTrain(nodes, amps), None
        except ValueError as e:
            raise ConfigError(str(e)) from e
    M = _field(cfg, "M", int, required=True)
    sizes = _field(cfg, "sizes", list, required=True)
    nu = _field(cfg, "nu", list, required=True)
    eta = _field(cfg, "eta", float, required=True)
    seed = _field(cfg, "seed", int, default=0)
    delta = _delta_from(cfg, omega)
    amps = _amps_from(cfg["amps"]) if "amps" in cfg else None
    try:
        return make_clustered_config(M, sizes, delta, nu, eta, seed, amps=amps)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def oracle_from_config(cfg: dict):
    """Build (oracle, spike, cluster_config_or_None) from a config dict."""
    spike, cluster = spike_from_config(cfg)
    noise = _field(cfg, "noise", str, default="none")
    if noise not in NOISE_KINDS:
        raise ConfigError(f"field 'noise' must be one of {list(NOISE_KINDS)}, got {noise!r}")
    oracle = make_oracle(
        spike,
        _field(cfg, "omega", float, required=True),
        _field(cfg, "epsilon", float, default=0.0),
        noise,
        _field(cfg, "seed", int, default=0),
    )
    return oracle, spike, cluster


def experiment_from_config(cfg: dict, need_grid=False) -> ExperimentSpec:
    """Build an :class:`ExperimentSpec`; requires generator geometry."""
    for key in ("sizes", "nu", "eta"):
        if key not in cfg:
            raise ConfigError(f"experiments need generator geometry; missing '{key}'")
    sizes = tuple(_field(cfg, "sizes", list, required=True))
    nu = tuple(float(v) for v in _field(cfg, "nu", list, required=True))
    geometry = GeometrySpec(sizes=sizes, nu=nu, eta=_field(cfg, "eta", float, required=True))
    methods = tuple(_field(cfg, "methods", list, default=["edp"]))
    for m in methods:
        if m not in METHODS:
            raise ConfigError(f"field 'methods' entries must be in {list(METHODS)}, got {m!r}")
    noise = _field(cfg, "noise", str, default="none")
    if noise not in NOISE_KINDS:
        raise ConfigError(f"field 'noise' must be one of {list(NOISE_KINDS)}, got {noise!r}")
    srf_grid = tuple(float(v) for v in _field(cfg, "srf_grid", list, default=[]))
    if need_grid and not srf_grid:
        raise ConfigError("missing required field 'srf_grid'")
    srf = _field(cfg, "srf", float) if "srf" in cfg else None
    if srf is None and "delta" in cfg:
        omega = _field(cfg, "omega", float, required=True)
        srf = 1.0 / (_field(cfg, "delta", float, required=True) * omega)
    return ExperimentSpec(
        geometry=geometry,
        omega=_field(cfg, "omega", float, required=True),
        epsilon=_field(cfg, "epsilon", float, default=0.0),
        noise=noise,
        methods=methods,
        trials=_field(cfg, "trials", int, default=1),
        seed=_field(cfg, "seed", int, default=0),
        srf=srf,
        srf_grid=srf_grid,
        n_rho=_field(cfg, "n_rho", int, default=900),
        n_bins=_field(cfg, "n_bins", int) if "n_bins" in cfg else None,
        omega_grid=tuple(float(v) for v in _field(cfg, "omega_grid", list, default=[])),
        unit_amps=_field(cfg, "unit_amps", bool, default=False),
    )
