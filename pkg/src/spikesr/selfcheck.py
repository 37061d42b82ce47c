"""Built-in property suite behind the ``spikesr validate`` subcommand.

Each check re-derives a structural identity or bound that the library
depends on and reports PASS/FAIL with a one-line detail.  The suite is
seeded and finishes in a few seconds; ``fast=True`` trims trial counts
further for smoke testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import spearmanr

from .dealias import AliasedPair, dealias_node
from .decimation import attach_separations, coprime_shift, select_rho, sweep_scores
from .pipeline import GeometrySpec, decimated_sr, match_to_truth
from .signal_model import SpikeTrain, make_clustered_config, make_oracle, wrap_dist
from .spectral import (
    congruence_ratios,
    det_product_identity,
    factorization_residual,
    vandermonde_scaling_probe,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _random_spike(rng, n) -> SpikeTrain:
    while True:
        nodes = np.sort(rng.uniform(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3, n))
        if n == 1 or np.diff(nodes).min() > 5e-3:
            break
    amps = rng.uniform(0.5, 2.0, n) * np.exp(1j * rng.uniform(-math.pi, math.pi, n))
    return SpikeTrain(nodes, amps)


def check_factorization(fast=False) -> CheckResult:
    rng = np.random.default_rng(11)
    reps = 1 if fast else 3
    worst = 0.0
    for n in range(2, 9):
        for _ in range(reps):
            worst = max(worst, factorization_residual(_random_spike(rng, n)))
    return CheckResult("factorization_identity", worst <= 1e-10,
                       f"max relative residual {worst:.3e}")


def check_congruence_sandwich(fast=False) -> CheckResult:
    rng = np.random.default_rng(12)
    trials = 50 if fast else 200
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        V = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        d = rng.normal(size=n) + 1j * rng.normal(size=n)
        theta = congruence_ratios(V, d)
        lo, hi = np.abs(d).min(), np.abs(d).max()
        worst = max(worst, float(max(lo - theta.min(), theta.max() - hi, 0.0)))
    return CheckResult("congruence_sandwich", worst <= 1e-8,
                       f"worst sandwich excursion {worst:.3e}")


def check_det_product(fast=False) -> CheckResult:
    rng = np.random.default_rng(13)
    trials = 10 if fast else 25
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 9))
        spike = _random_spike(rng, n)
        det, chord, sig = det_product_identity(spike.nodes)
        ref = max(det, 1e-300)
        worst = max(worst, abs(det - chord) / ref, abs(det - sig) / ref)
    return CheckResult("det_product_identity", worst <= 1e-10,
                       f"max relative disagreement {worst:.3e}")


def check_vandermonde_scaling(fast=False) -> CheckResult:
    deltas = np.logspace(-2, -4, 4 if fast else 6)
    probe = vandermonde_scaling_probe((3, 2), (2.0, 1.0), 0.6, deltas, seed=5)
    dev = float(np.abs(probe.slopes - np.asarray(probe.expected)).max())
    return CheckResult("vandermonde_scaling", dev <= 0.15,
                       f"max slope deviation {dev:.3f} from {probe.expected}")


def check_score_tracks_separation(fast=False) -> CheckResult:
    spike, config = make_clustered_config(1, [2], 1.0 / (6.0 * 100.0), [1.0], 0.0, seed=3)
    oracle = make_oracle(spike, 100.0)
    scores = attach_separations(sweep_scores(oracle, spike.n, 1), spike.nodes)
    sig = [s.sigma for s in scores]
    sep = [s.delta_rho for s in scores]
    corr = float(spearmanr(sig, sep).statistic)
    return CheckResult("score_tracks_separation", corr >= 0.9,
                       f"Spearman correlation {corr:.3f} over {len(sig)} rates")


def check_dealias_exact(fast=False) -> CheckResult:
    worst = 0.0
    grid = 50 if fast else 100
    for rho in range(2, 13):
        t = coprime_shift(rho, float(rho * 40), 2)
        xs = np.linspace(-math.pi / 2 + 1e-6, math.pi / 2, grid)
        for x in xs:
            pair = AliasedPair(phi_rho=complex(np.exp(1j * rho * x)),
                               phi_t=complex(np.exp(1j * t * x)), rho=rho, t=t)
            worst = max(worst, float(wrap_dist(dealias_node(pair), x)))
    return CheckResult("dealias_exact", worst <= 1e-12,
                       f"max wrapped error {worst:.3e}")


def check_noiseless_recovery(fast=False) -> CheckResult:
    rng = np.random.default_rng(14)
    trials = 2 if fast else 5
    worst = 0.0
    for k in range(trials):
        sizes = [int(rng.integers(2, 4)), 1]
        geom = GeometrySpec(sizes=tuple(sizes), nu=(float(max(sizes[0] - 1, 1)), 1.0), eta=0.8)
        omega = float(rng.integers(60, 140))
        srf_value = float(rng.uniform(2.0, 8.0))
        spike, _ = geom.build(1.0 / (srf_value * omega), seed=20 + k)
        oracle = make_oracle(spike, omega)
        res = decimated_sr(oracle, spike.n, geom.n_clusters)
        _, errs = match_to_truth(spike.nodes, res.est_nodes)
        worst = max(worst, float(errs.max()))
    return CheckResult("noiseless_recovery", worst <= 1e-8,
                       f"max node error {worst:.3e}")


def check_selection_quality(fast=False) -> CheckResult:
    rng = np.random.default_rng(15)
    trials = 4 if fast else 10
    worst = math.inf
    for k in range(trials):
        sizes = [int(rng.integers(2, 4)), int(rng.integers(1, 3))]
        nu = tuple(float(max(s - 1, 1)) for s in sizes)
        geom = GeometrySpec(sizes=tuple(sizes), nu=nu, eta=0.7)
        omega = float(rng.integers(60, 140))
        srf_value = float(rng.uniform(1.5, 10.0))
        spike, _ = geom.build(1.0 / (srf_value * omega), seed=40 + k)
        oracle = make_oracle(spike, omega)
        scores = attach_separations(sweep_scores(oracle, spike.n, geom.n_clusters),
                                    spike.nodes)
        chosen = select_rho(scores)
        sep = {s.rho: s.delta_rho for s in scores}
        worst = min(worst, sep[chosen] / max(sep.values()))
    return CheckResult("selection_quality", worst >= 0.5,
                       f"min dilated-separation ratio {worst:.3f}")


ALL_CHECKS = (
    check_factorization,
    check_congruence_sandwich,
    check_det_product,
    check_vandermonde_scaling,
    check_score_tracks_separation,
    check_dealias_exact,
    check_noiseless_recovery,
    check_selection_quality,
)


def run_all(fast=False) -> list:
    """Run every check; returns the list of :class:`CheckResult`."""
    return [check(fast=fast) for check in ALL_CHECKS]
