"""Spike trains on the half-circle and their band-limited Fourier samples.

The signal model is a discrete measure mu(x) = sum_j a_j delta(x - x_j) with
distinct nodes x_j in (-pi/2, pi/2] and nonzero complex amplitudes a_j.  Its
Fourier transform is sampled on the band [-Omega, Omega],

    mu^(omega) = sum_j a_j exp(i omega x_j) + e(omega),   |e(omega)| <= eps,

and everything downstream (decimation, Toeplitz scoring, de-aliasing) consumes
these samples through a :class:`MeasurementOracle`.

Distances between nodes are measured on the circle of circumference 2*pi:
``wrap_dist(a, b) = |(a - b) mod (-pi, pi]|``.  The node domain is restricted
to a half-circle so that dilated nodes rho*x_j remain identifiable modulo
2*pi for small integer rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleGeometryError, OutOfBandError
from .validation import (
    check_complex_vector,
    check_membership,
    check_node_domain,
    check_order,
    check_positive,
    check_real_vector,
)

TWO_PI = 2.0 * math.pi

NOISE_KINDS = ("none", "cauchy_clipped", "uniform_box")


def wrap_dist(a, b):
    """Wrapped distance on the circle of circumference 2*pi.

    Parameters
    ----------
    a, b : float or ndarray
        Angles in radians; any real values are accepted and broadcast.

    Returns
    -------
    float or ndarray
        ``|(a - b) mod (-pi, pi]|``, i.e. the length of the shorter arc.
    """
    d = np.mod(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
               + np.pi, TWO_PI) - np.pi
    return np.abs(d)


def min_separation(nodes) -> float:
    """Minimal pairwise wrapped distance of a node set.

    Parameters
    ----------
    nodes : array_like
        At least two angles, in radians.  Values outside (-pi, pi] are
        wrapped implicitly by the metric.

    Returns
    -------
    float
        min over j != k of ``wrap_dist(x_j, x_k)``.
    """
    x = check_real_vector(nodes, "nodes", min_len=2)
    d = wrap_dist(x[:, None], x[None, :])
    d[np.diag_indices_from(d)] = np.inf
    return float(d.min())


def dilated_separation(nodes, rho) -> float:
    """Minimal separation of the dilated node set ``rho * x_j`` (wrapped)."""
    r = check_positive(rho, "rho")
    return min_separation(np.asarray(nodes, dtype=np.float64) * r)


def srf(omega, delta) -> float:
    """Super-resolution factor ``1 / (delta * omega)``.

    Values above 1 mean the minimal separation is below the Rayleigh limit
    ``1 / omega`` of the available band.
    """
    w = check_positive(omega, "omega")
    d = check_positive(delta, "delta")
    return 1.0 / (d * w)


def delta_for_srf(srf_value, omega) -> float:
    """Node separation realizing a target super-resolution factor."""
    s = check_positive(srf_value, "srf")
    w = check_positive(omega, "omega")
    return 1.0 / (s * w)


@dataclass(frozen=True, eq=False)
class SpikeTrain:
    """A finite spike train on the half-circle.

    Attributes
    ----------
    nodes : ndarray
        Distinct angles in (-pi/2, pi/2], radians.
    amps : ndarray
        Nonzero complex amplitudes, one per node.
    """

    nodes: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        nodes = check_node_domain(self.nodes, "nodes")
        amps = check_complex_vector(self.amps, "amps")
        if nodes.size != amps.size:
            raise ValueError(f"nodes ({nodes.size}) and amps ({amps.size}) differ in length")
        if np.any(np.abs(amps) == 0.0):
            raise ValueError("amplitudes must be nonzero")
        if nodes.size >= 2 and min_separation(nodes) == 0.0:
            raise ValueError("nodes must be distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "amps", amps)

    @property
    def n(self) -> int:
        return int(self.nodes.size)

    def fourier(self, omegas):
        """Clean Fourier samples ``sum_j a_j exp(i omega x_j)``."""
        return fourier_sample(self, omegas)


def fourier_sample(spike: SpikeTrain, omegas):
    """Evaluate the spike train's Fourier transform at given frequencies.

    Parameters
    ----------
    spike : SpikeTrain
    omegas : float or array_like
        Real frequencies; no bandwidth restriction applies here.

    Returns
    -------
    complex or ndarray
        ``sum_j a_j exp(i omega x_j)`` per frequency, scalar in, scalar out.
    """
    w = np.asarray(omegas, dtype=np.float64)
    vals = np.exp(1j * np.multiply.outer(w, spike.nodes)) @ spike.amps
    if np.isscalar(omegas) or w.ndim == 0:
        return complex(vals)
    return vals


@dataclass(frozen=True, eq=False)
class ClusterConfig:
    """Geometry descriptor for a clustered node set.

    The node index set is partitioned into M clusters; cluster j has
    ``sizes[j]`` nodes whose pairwise distances lie in
    ``[delta, nu[j] * delta]``, different clusters are at least ``eta``
    apart, and ``delta`` is the global minimal separation.

    ``multiplicities[m-1]`` counts the clusters of size at least m; these
    determine how the small singular values of node Vandermonde matrices
    group into powers of delta.
    """

    sizes: tuple
    nu: tuple
    eta: float
    delta: float
    partition: tuple
    multiplicities: tuple

    @property
    def n(self) -> int:
        return int(sum(self.sizes))

    @property
    def n_clusters(self) -> int:
        return len(self.sizes)


def cluster_multiplicities(sizes) -> tuple:
    """Multiplicity vector ell_m = #{j : sizes[j] >= m}, m = 1..max(sizes)."""
    sizes = [check_order(s, "cluster size") for s in sizes]
    top = max(sizes)
    return tuple(sum(1 for s in sizes if s >= m) for m in range(1, top + 1))


def make_clustered_config(M, sizes, delta, nu, eta, seed, amps=None):
    """Draw a clustered spike train with prescribed geometry.

    Clusters are laid out left to right.  Within a cluster the first gap is
    exactly ``delta`` (so the configuration's minimal separation equals
    ``delta``) and the remaining gaps carry seeded jitter within the
    diameter budget ``nu[j] * delta``.  Consecutive clusters are separated
    by ``eta`` plus seeded jitter, and the whole configuration is centered
    at 0, which keeps every node strictly inside the half-circle and makes
    wrapped distances coincide with linear ones.

    Parameters
    ----------
    M : int
        Number of clusters.
    sizes : sequence of int
        Cluster sizes; ``sum(sizes)`` is the spike count n.
    delta : float
        Intra-cluster minimal gap, radians.
    nu : sequence of float
        Per-cluster spread factors; cluster j's diameter is at most
        ``nu[j] * delta``.  Requires ``nu[j] >= sizes[j] - 1``.
    eta : float
        Minimal distance between nodes of different clusters.  Must be at
        least ``delta`` when M >= 2.
    seed : int
        Seed for gap jitter, amplitude moduli and phases.
    amps : array_like, optional
        Explicit amplitudes overriding the random draw (length n).

    Returns
    -------
    (SpikeTrain, ClusterConfig)

    Raises
    ------
    InfeasibleGeometryError
        If ``sum_j (sizes[j]-1) * nu[j] * delta + (M-1) * eta >= pi`` or a
        spread factor is too small for its cluster size.
    """
    M = check_order(M, "M")
    sizes = tuple(check_order(s, "cluster size") for s in sizes)
    if len(sizes) != M:
        raise ValueError(f"sizes has length {len(sizes)}, expected M={M}")
    nu = tuple(check_positive(v, "nu") for v in nu)
    if len(nu) != M:
        raise ValueError(f"nu has length {len(nu)}, expected M={M}")
    delta = check_positive(delta, "delta")
    eta = check_positive(eta, "eta", strict=False)
    for s, v in zip(sizes, nu):
        if s >= 2 and v < s - 1:
            raise InfeasibleGeometryError(
                f"spread factor {v} cannot hold {s} nodes at pairwise gap >= delta "
                f"(needs nu >= {s - 1})")
    if M >= 2 and eta < delta:
        raise InfeasibleGeometryError(
            f"inter-cluster distance eta={eta} below intra-cluster gap delta={delta}")
    span_bound = sum((s - 1) * v * delta for s, v in zip(sizes, nu)) + (M - 1) * eta
    if span_bound >= math.pi:
        raise InfeasibleGeometryError(
            f"maximal span {span_bound:.4g} rad does not fit the half-circle")

    rng = np.random.default_rng(seed)
    positions = []
    partition = []
    cursor = 0.0
    slack = 0.98 * math.pi - span_bound
    for j, (s, v) in enumerate(zip(sizes, nu)):
        if j > 0:
            jitter_cap = max(min(eta, slack / (M - 1)), 0.0)
            cursor += eta
            if jitter_cap > 0:
                cursor += rng.uniform(0.0, jitter_cap)
        start = len(positions)
        positions.append(cursor)
        if s >= 2:
            budget = (v - (s - 1)) * delta
            gaps = [delta]
            for _ in range(s - 2):
                gaps.append(delta + rng.uniform(0.0, budget / (s - 1)))
            for g in gaps:
                cursor += g
                positions.append(cursor)
        partition.append(tuple(range(start, start + s)))

    pos = np.asarray(positions, dtype=np.float64)
    pos -= (pos[0] + pos[-1]) / 2.0

    n = pos.size
    if amps is None:
        moduli = rng.uniform(0.5, 2.0, n)
        phases = rng.uniform(-math.pi, math.pi, n)
        amp_arr = moduli * np.exp(1j * phases)
    else:
        amp_arr = check_complex_vector(amps, "amps")
        if amp_arr.size != n:
            raise ValueError(f"amps has length {amp_arr.size}, expected n={n}")

    spike = SpikeTrain(pos, amp_arr)
    config = ClusterConfig(sizes=sizes, nu=nu, eta=eta, delta=delta,
                           partition=tuple(partition),
                           multiplicities=cluster_multiplicities(sizes))
    check_cluster_invariants(spike, config)
    return spike, config


def check_cluster_invariants(spike: SpikeTrain, config: ClusterConfig, tol: float = 1e-9):
    """Verify that a spike train realizes its cluster descriptor.

    Raises ``ValueError`` on the first violated invariant; returns None on
    success.  Checked: the partition covers each node index exactly once,
    intra-cluster distances lie in [delta, nu_j * delta], inter-cluster
    distances are at least eta, the global minimal separation equals delta
    (for n >= 2), and the multiplicity vector matches the sizes.
    """
    idx = sorted(i for block in config.partition for i in block)
    if idx != list(range(spike.n)):
        raise ValueError("partition does not cover node indices exactly once")
    if tuple(len(b) for b in config.partition) != tuple(config.sizes):
        raise ValueError("partition block lengths disagree with sizes")
    h = config.delta
    for j, block in enumerate(config.partition):
        b = np.asarray(block)
        if b.size < 2:
            continue
        d = wrap_dist(spike.nodes[b][:, None], spike.nodes[b][None, :])
        off = d[~np.eye(b.size, dtype=bool)]
        if off.min() < h - tol or off.max() > config.nu[j] * h + tol:
            raise ValueError(
                f"cluster {j} pairwise distances [{off.min():.6g}, {off.max():.6g}] "
                f"leave [{h:.6g}, {config.nu[j] * h:.6g}]")
    for j in range(config.n_clusters):
        for k in range(j + 1, config.n_clusters):
            bj = np.asarray(config.partition[j])
            bk = np.asarray(config.partition[k])
            d = wrap_dist(spike.nodes[bj][:, None], spike.nodes[bk][None, :])
            if d.min() < config.eta - tol:
                raise ValueError(
                    f"clusters {j} and {k} are {d.min():.6g} apart, below eta={config.eta:.6g}")
    if spike.n >= 2:
        sep = min_separation(spike.nodes)
        if abs(sep - h) > max(tol, 1e-12):
            raise ValueError(f"minimal separation {sep:.12g} differs from delta={h:.12g}")
    if config.multiplicities != cluster_multiplicities(config.sizes):
        raise ValueError("multiplicity vector inconsistent with sizes")


@dataclass(frozen=True, eq=False)
class MeasurementOracle:
    """Band-limited, noise-corrupted access to a spike train's spectrum.

    Queries are pure functions of (seed, omega): repeating a query returns
    the identical value with no shared state, which keeps concurrent
    experiments deterministic.  Noise is drawn per frequency from the bit
    pattern of the queried omega.

    Attributes
    ----------
    spike : SpikeTrain
    omega_max : float
        Bandwidth Omega; queries need |omega| <= Omega.
    epsilon : float
        Noise bound; every perturbation satisfies |e(omega)| <= epsilon.
    noise : str
        One of ``none``, ``cauchy_clipped`` (heavy-tailed draw with modulus
        clipped to epsilon), ``uniform_box`` (uniform real and imaginary
        parts in [-epsilon/sqrt(2), epsilon/sqrt(2)]).
    seed : int
    """

    spike: SpikeTrain
    omega_max: float
    epsilon: float = 0.0
    noise: str = "none"
    seed: int = 0

    def __post_init__(self):
        check_positive(self.omega_max, "omega_max")
        check_positive(self.epsilon, "epsilon", strict=False)
        check_membership(self.noise, NOISE_KINDS, "noise")

    @property
    def n(self) -> int:
        return self.spike.n

    def clean(self, omegas):
        """Noise-free samples; same domain restriction as :meth:`eval`."""
        self._check_band(omegas)
        return fourier_sample(self.spike, omegas)

    def eval(self, omega) -> complex:
        """One noisy sample at a single frequency."""
        self._check_band(omega)
        return complex(fourier_sample(self.spike, float(omega)) + self._noise_at(float(omega)))

    def eval_many(self, omegas) -> np.ndarray:
        """Vectorized noisy samples, one per entry of ``omegas``."""
        w = check_real_vector(np.atleast_1d(np.asarray(omegas, dtype=np.float64)), "omegas")
        self._check_band(w)
        vals = fourier_sample(self.spike, w)
        if self.noise != "none" and self.epsilon > 0:
            vals = vals + np.array([self._noise_at(float(x)) for x in w])
        return vals

    def _check_band(self, omegas):
        w = np.abs(np.asarray(omegas, dtype=np.float64))
        if w.size and w.max() > self.omega_max + 1e-9:
            raise OutOfBandError(
                f"query at |omega|={w.max():.6g} exceeds bandwidth {self.omega_max:.6g}")

    def _noise_at(self, omega: float) -> complex:
        if self.noise == "none" or self.epsilon == 0.0:
            return 0.0 + 0.0j
        bits = int(np.float64(omega).view(np.uint64))
        rng = np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, bits])
        if self.noise == "cauchy_clipped":
            re, im = rng.standard_cauchy(2)
            e = (re + 1j * im) * (self.epsilon / 10.0)
            mag = abs(e)
            if mag > self.epsilon:
                e *= self.epsilon / mag
            return e
        half = self.epsilon / math.sqrt(2.0)
        re, im = rng.uniform(-half, half, 2)
        return re + 1j * im


def make_oracle(spike: SpikeTrain, omega_max, epsilon=0.0, noise="none", seed=0) -> MeasurementOracle:
    """Construct a :class:`MeasurementOracle`, validating all parameters."""
    return MeasurementOracle(spike=spike, omega_max=float(omega_max),
                             epsilon=float(epsilon), noise=noise, seed=int(seed))
