"""Exponential-fitting solvers on uniform sample grids.

All solvers consume a :class:`SampleVector`: values mu(rate * k + shift) for
k = 0..K-1.  In that indexing the model is

    mu(rate k + shift) = sum_j (a_j exp(i shift x_j)) * phi_j^k,
    phi_j = exp(i rate x_j),

so node information lives in the unit-modulus generators phi_j and the
recovered amplitudes absorb the shift factor exp(i shift x_j).  That behavior
is load-bearing: the de-aliasing stage reads the shift factor out of the
ratio of two amplitude fits.

``prony`` solves the classical square system (K = 2n exactly);
``matrix_pencil`` is the SVD-based variant tolerant of K > 2n;
``decimated_prony_histogram`` is a consensus baseline that pools node
candidates from many decimated sub-problems into a histogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .decimation import candidate_rhos
from .errors import (
    DegenerateSampleSetError,
    InsufficientConsensusError,
    SolverFailureError,
)
from .validation import check_complex_vector, check_order, check_unit_moduli

_COND_LIMIT = 1e14


@dataclass(frozen=True, eq=False)
class SampleVector:
    """Uniform samples mu(rate * k + shift), k = 0..K-1."""

    values: np.ndarray
    rate: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        v = check_complex_vector(self.values, "values", min_len=2)
        object.__setattr__(self, "values", v)

    @property
    def k(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class NodeEstimate:
    """Solver output: unit-modulus generators and matching amplitudes.

    ``radial_dev`` records the largest |1 - |root|| seen before projecting
    roots onto the unit circle; it is a cheap conditioning diagnostic.
    """

    phis: np.ndarray
    amps: np.ndarray
    rate: float
    shift: float = 0.0
    radial_dev: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phis", check_unit_moduli(self.phis, "phis", tol=1e-6))
        object.__setattr__(self, "amps", check_complex_vector(self.amps, "amps"))

    @property
    def angles(self) -> np.ndarray:
        """arg(phi_j), each in (-pi, pi]; equals rate * x_j modulo 2*pi."""
        return np.angle(self.phis)


@dataclass(frozen=True, eq=False)
class AmplitudeFit:
    """Least-squares amplitude solution with diagnostics."""

    amps: np.ndarray
    residual: float
    cond: float


def unit_grid_count(omega, n, requested=None) -> int:
    """Sample count for a unit-rate amplitude fit within band omega.

    Defaults to the full integer grid 0..floor(omega).  A short grid (say
    2n points) leaves the Vandermonde ill conditioned for tight clusters
    and the fitted amplitudes inherit the node error amplified by that
    condition number; the full grid keeps the amplification at the level
    the band itself dictates.
    """
    if requested is not None:
        k = int(requested)
        if k < int(n):
            raise ValueError(f"amplitude grid needs at least n={int(n)} samples, got {k}")
        if k - 1 > omega + 1e-9:
            raise ValueError(f"amplitude grid 0..{k - 1} exceeds band {omega}")
        return k
    return max(2 * int(n), int(math.floor(omega + 1e-9)) + 1)


def amplitude_ls(phis, sv: SampleVector) -> AmplitudeFit:
    """Fit amplitudes for known generators by least squares.

    Solves min over c of ||Z c - values||_2 with Z[k, j] = phis_j^k.  The
    recovered c_j equal a_j exp(i shift x_j) under the sample model.
    """
    phis = check_unit_moduli(phis, "phis")
    K = sv.k
    if K < phis.size:
        raise ValueError(f"need at least {phis.size} samples, got {K}")
    Z = np.power.outer(phis, np.arange(K)).T.astype(np.complex128)
    sol, _, _, svals = scipy.linalg.lstsq(Z, sv.values)
    resid = float(np.linalg.norm(Z @ sol - sv.values))
    cond = float(svals[0] / svals[-1]) if svals is not None and svals[-1] > 0 else math.inf
    return AmplitudeFit(amps=sol, residual=resid, cond=cond)


def _project_roots(roots, n) -> tuple:
    if roots.size != n or not np.all(np.isfinite(roots)):
        raise SolverFailureError(f"expected {n} finite roots, got {roots.size}")
    moduli = np.abs(roots)
    if moduli.min() == 0.0:
        raise SolverFailureError("root at the origin cannot be projected")
    radial_dev = float(np.abs(1.0 - moduli).max())
    phis = roots / moduli
    order = np.argsort(np.angle(phis), kind="stable")
    return phis[order], radial_dev


def prony(sv: SampleVector, n) -> NodeEstimate:
    """Classical Prony's method on exactly 2n samples.

    Solves the square Hankel system for the annihilating polynomial, roots
    it, projects the roots onto the unit circle and fits amplitudes.

    Raises
    ------
    DegenerateSampleSetError
        If the Hankel system's condition number exceeds 1e14.
    SolverFailureError
        If root finding does not yield n usable roots.
    """
    n = check_order(n, "n")
    if sv.k != 2 * n:
        raise ValueError(f"prony needs exactly 2n={2 * n} samples, got {sv.k}")
    mu = sv.values
    H = scipy.linalg.hankel(mu[:n], mu[n - 1:2 * n - 1])
    if np.linalg.cond(H) > _COND_LIMIT:
        raise DegenerateSampleSetError(
            f"degenerate sample set: Hankel condition exceeds {_COND_LIMIT:.0e}")
    q, _, _, _ = scipy.linalg.lstsq(H, -mu[n:2 * n])
    roots = np.roots(np.concatenate(([1.0 + 0.0j], q[::-1])))
    phis, radial_dev = _project_roots(roots, n)
    fit = amplitude_ls(phis, sv)
    return NodeEstimate(phis=phis, amps=fit.amps, rate=sv.rate, shift=sv.shift,
                        radial_dev=radial_dev)


def matrix_pencil(sv: SampleVector, n, pencil=None) -> NodeEstimate:
    """Matrix-pencil (ESPRIT-style) solver for K >= 2n samples.

    Forms the Hankel data matrix, truncates to the leading n-dimensional
    signal subspace and extracts generators as the eigenvalues of the
    reduced pencil.  ``pencil`` sets the window length L (default K // 2,
    clipped to [n, K - n]).
    """
    n = check_order(n, "n")
    K = sv.k
    if K < 2 * n:
        raise ValueError(f"matrix pencil needs at least 2n={2 * n} samples, got {K}")
    L = K // 2 if pencil is None else int(pencil)
    L = min(max(L, n), K - n)
    mu = sv.values
    H = scipy.linalg.hankel(mu[:K - L], mu[K - L - 1:])
    Y0 = H[:, :L]
    Y1 = H[:, 1:]
    U, s, Vh = np.linalg.svd(Y0, full_matrices=False)
    if s[n - 1] <= s[0] * 1e-15:
        raise DegenerateSampleSetError("model order unreachable: rank below n")
    B = (U[:, :n].conj().T @ Y1 @ Vh[:n, :].conj().T) / s[:n][:, None]
    roots = np.linalg.eigvals(B)
    phis, radial_dev = _project_roots(roots, n)
    fit = amplitude_ls(phis, sv)
    return NodeEstimate(phis=phis, amps=fit.amps, rate=sv.rate, shift=sv.shift,
                        radial_dev=radial_dev)


def _bin_index(x, n_bins) -> int:
    # domain (-pi/2, pi/2] mapped to 0..n_bins-1
    frac = (x + math.pi / 2) / math.pi
    idx = int(math.floor(frac * n_bins))
    return min(max(idx, 0), n_bins - 1)


def decimated_prony_histogram(oracle, n, n_bins, n_rho=900, rhos=None) -> NodeEstimate:
    """Consensus-histogram recovery over many decimated Prony solves.

    For each rate rho on a grid over the admissible interval, runs Prony on
    mu(rho k), k = 0..2n-1, lifts every root to its candidate pre-images in
    (-pi/2, pi/2] and accumulates them into a histogram with ``n_bins``
    bins.  The n most populated non-adjacent bins are taken as peaks; each
    node estimate averages the candidates falling into the winning bin and
    its two neighbors.  Amplitudes are then fitted at unit rate on the full
    integer grid, see :func:`unit_grid_count`.

    Rates may be non-integral: candidate lifting only needs arg(root)/rho
    arithmetic.  Passing ``rhos=[1.0]`` reduces to plain Prony.
    """
    n = check_order(n, "n")
    n_bins = check_order(n_bins, "n_bins", minimum=n)
    if rhos is None:
        cand = candidate_rhos(oracle.omega_max, n)
        n_rho = check_order(n_rho, "n_rho")
        grid = np.linspace(cand.lo, cand.hi, n_rho)
    else:
        grid = np.asarray(rhos, dtype=np.float64)
        if grid.size == 0:
            raise ValueError("rhos must be non-empty")

    counts = np.zeros(int(n_bins), dtype=np.int64)
    members = [[] for _ in range(int(n_bins))]
    solved = 0
    for rho in grid:
        try:
            samples = oracle.eval_many(rho * np.arange(2 * n))
            est = prony(SampleVector(samples, rate=float(rho)), n)
        except (DegenerateSampleSetError, SolverFailureError):
            continue
        solved += 1
        for theta in est.angles:
            m_lo = math.ceil((-rho * math.pi / 2 - theta) / (2 * math.pi) - 1e-12)
            m_hi = math.floor((rho * math.pi / 2 - theta) / (2 * math.pi) + 1e-12)
            for m in range(m_lo, m_hi + 1):
                x = (theta + 2 * math.pi * m) / rho
                if -math.pi / 2 - 1e-12 < x <= math.pi / 2 + 1e-12:
                    b = _bin_index(x, int(n_bins))
                    counts[b] += 1
                    members[b].append(x)
    if solved == 0:
        raise DegenerateSampleSetError("every decimated sub-problem failed")

    order = sorted(range(int(n_bins)), key=lambda b: (-counts[b], b))
    peaks = []
    for b in order:
        if counts[b] == 0:
            break
        if any(abs(b - p) <= 1 for p in peaks):
            continue
        peaks.append(b)
        if len(peaks) == n:
            break
    if len(peaks) < n:
        raise InsufficientConsensusError(
            f"only {len(peaks)} populated histogram peaks for {n} nodes")

    nodes = []
    for b in peaks:
        pool = []
        for bb in (b - 1, b, b + 1):
            if 0 <= bb < int(n_bins):
                pool.extend(members[bb])
        nodes.append(float(np.mean(pool)))
    nodes = np.sort(np.asarray(nodes))

    k_amp = unit_grid_count(oracle.omega_max, n)
    base = SampleVector(oracle.eval_many(np.arange(k_amp, dtype=np.float64)), rate=1.0)
    phis = np.exp(1j * nodes)
    fit = amplitude_ls(phis, base)
    return NodeEstimate(phis=phis, amps=fit.amps, rate=1.0)
