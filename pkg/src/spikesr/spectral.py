"""Vandermonde and sample-Toeplitz linear algebra.

For nodes X = {x_1..x_s} and a sample set S, the Vandermonde matrix is
``V(X; S)[r, c] = exp(i k_r x_c)``; ``V_n`` abbreviates S = {0..n-1}.  From
2n-1 consecutive Fourier samples mu_0..mu_{2n-2} one forms the n x n Toeplitz
matrix

    T[j, k] = mu_{n-1+j-k},

which factors as T = V~ A V_n^* = V_n D V_n^* with A = diag(a_j),
V~ = diag(exp(i (n-1) x_j)) V_n and D = diag(a_j exp(i (n-1) x_j)).  The
(M+1)-th singular value of T built from decimated samples is the scoring
statistic used for rate selection; its square-root tracks the minimal
separation of the dilated nodes.

``ostrowski_ratios`` computes the ratio sequence
theta_i = sigma_i(V* D V) / lambda_i(V V*) used to probe how far the singular
spectrum of the non-Hermitian product strays from the Hermitian reference;
``congruence_ratios`` computes the counterpart for the Hermitian congruence
(D^(1/2))^* (V V^*) (D^(1/2)), whose ratios are provably confined to
[min_j |d_j|, max_j |d_j|].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .validation import check_complex_vector, check_order, check_real_vector

_SING_TOL = 1e-13


def vandermonde(nodes, sample_set) -> np.ndarray:
    """Vandermonde matrix ``exp(i k x)`` with rows over ``sample_set``.

    Parameters
    ----------
    nodes : array_like
        Node angles (columns).
    sample_set : array_like
        Real sample indices k (rows); integers 0..n-1 give the classical
        square matrix when len(nodes) == n.

    Returns
    -------
    ndarray, shape (len(sample_set), len(nodes))
    """
    x = check_real_vector(nodes, "nodes")
    k = check_real_vector(np.asarray(sample_set, dtype=np.float64), "sample_set")
    return np.exp(1j * np.multiply.outer(k, x))


def square_vandermonde(nodes) -> np.ndarray:
    """``V_n``: the n x n Vandermonde with sample set {0..n-1}."""
    x = check_real_vector(nodes, "nodes")
    return vandermonde(x, np.arange(x.size))


@dataclass(frozen=True, eq=False)
class SampleToeplitz:
    """The n x n Toeplitz matrix of 2n-1 consecutive (decimated) samples.

    Attributes
    ----------
    samples : ndarray
        mu(rho * k), k = 0..2n-2; odd length.
    rho : float
        Decimation rate the samples were taken at (bookkeeping only).
    """

    samples: np.ndarray
    rho: float = 1.0

    def __post_init__(self):
        s = check_complex_vector(self.samples, "samples", min_len=1)
        if s.size % 2 == 0:
            raise ValueError(f"need an odd number of samples (2n-1), got {s.size}")
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return (self.samples.size + 1) // 2

    @property
    def matrix(self) -> np.ndarray:
        n = self.n
        return scipy.linalg.toeplitz(self.samples[n - 1:], self.samples[n - 1::-1])

    def singular_values(self) -> np.ndarray:
        """All n singular values, descending."""
        return np.linalg.svd(self.matrix, compute_uv=False)


def toeplitz_from_samples(samples, rho=1.0) -> SampleToeplitz:
    """Wrap 2n-1 consecutive samples into a :class:`SampleToeplitz`."""
    return SampleToeplitz(samples=np.asarray(samples, dtype=np.complex128), rho=float(rho))


def factorization_residual(spike, n=None, rho=1.0) -> float:
    """Relative residual of the Toeplitz factorization T = V~ A V_n^*.

    Builds T from the spike's clean samples mu(rho k), k = 0..2n-2, and
    compares against V_n(rho X) diag(a_j exp(i (n-1) rho x_j)) V_n(rho X)^*.
    Exact up to roundoff for any n >= spike.n; residuals above ~1e-12
    indicate an indexing inconsistency.

    Returns
    -------
    float
        ``||T - V D V^*||_F / ||T||_F``.
    """
    n = spike.n if n is None else check_order(n, "n")
    y = float(rho) * spike.nodes
    samples = spike.fourier(float(rho) * np.arange(2 * n - 1))
    T = toeplitz_from_samples(samples, rho).matrix
    V = vandermonde(y, np.arange(n))
    d = spike.amps * np.exp(1j * (n - 1) * y)
    R = T - (V * d[None, :]) @ V.conj().T
    denom = np.linalg.norm(T)
    return float(np.linalg.norm(R) / denom) if denom > 0 else float(np.linalg.norm(R))


def ostrowski_ratios(V, d) -> np.ndarray:
    """Ratios theta_i = sigma_i(V* D V) / lambda_i(V V*), both descending.

    Parameters
    ----------
    V : ndarray, square and nonsingular
    d : array_like, complex diagonal of D

    Returns
    -------
    ndarray
        theta_1..theta_n.  Callers compare against [min|d_j|, max|d_j|];
        the containment is exact when all d_j share a common phase and is
        an empirical question otherwise (see :func:`congruence_ratios` for
        the variant with a guaranteed sandwich).
    """
    V = np.asarray(V, dtype=np.complex128)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ValueError(f"V must be square, got shape {V.shape}")
    dd = check_complex_vector(d, "d", min_len=V.shape[0])
    if dd.size != V.shape[0]:
        raise ValueError(f"d has length {dd.size}, expected {V.shape[0]}")
    Q = V.conj().T @ (dd[:, None] * V)
    sig = np.linalg.svd(Q, compute_uv=False)
    lam = np.linalg.eigvalsh(V @ V.conj().T)[::-1]
    if lam[-1] <= _SING_TOL * lam[0]:
        raise ValueError("V is numerically singular")
    return sig / lam


def congruence_ratios(V, d) -> np.ndarray:
    """Ratios |lambda_i(S* (V V*) S)| / lambda_i(V V*) with S = diag(sqrt(d_j)).

    The congruence by the principal square roots keeps the product
    Hermitian positive semidefinite, so by Ostrowski's theorem every ratio
    lies in [min_j |d_j|, max_j |d_j|] exactly (nonsingular V).
    """
    V = np.asarray(V, dtype=np.complex128)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ValueError(f"V must be square, got shape {V.shape}")
    dd = check_complex_vector(d, "d", min_len=V.shape[0])
    if dd.size != V.shape[0]:
        raise ValueError(f"d has length {dd.size}, expected {V.shape[0]}")
    s = np.sqrt(dd.astype(np.complex128))
    G = V @ V.conj().T
    K = (s.conj()[:, None] * G) * s[None, :]
    K = (K + K.conj().T) / 2.0
    lam_K = np.abs(np.linalg.eigvalsh(K))[::-1]
    lam_G = np.linalg.eigvalsh(G)[::-1]
    if lam_G[-1] <= _SING_TOL * lam_G[0]:
        raise ValueError("V is numerically singular")
    return np.sort(lam_K)[::-1] / lam_G


def det_product_identity(nodes) -> tuple:
    """|det V_n| against the chord product and the singular value product.

    For distinct nodes, |det V_n(X)| = prod_{k<j} |exp(i x_j) - exp(i x_k)|
    and also equals the product of the singular values of V_n.

    Returns
    -------
    (abs_det, chord_product, sigma_product) : tuple of float
    """
    x = check_real_vector(nodes, "nodes", min_len=2)
    V = square_vandermonde(x)
    abs_det = float(np.abs(np.linalg.det(V)))
    z = np.exp(1j * x)
    diff = np.abs(z[None, :] - z[:, None])
    chord = float(np.prod(diff[np.triu_indices(x.size, k=1)]))
    sigma = float(np.prod(np.linalg.svd(V, compute_uv=False)))
    return abs_det, chord, sigma


@dataclass(frozen=True, eq=False)
class ScalingProbe:
    """Singular values of V_n across a delta grid plus fitted log-log slopes."""

    deltas: np.ndarray
    sigmas: np.ndarray          # shape (len(deltas), n), descending per row
    slopes: np.ndarray          # length n
    expected: tuple             # exponents implied by the multiplicity vector


def expected_exponents(multiplicities) -> tuple:
    """Exponent per descending singular value index: ell_m values of m-1."""
    out = []
    for m, count in enumerate(multiplicities):
        out.extend([m] * count)
    return tuple(out)


def vandermonde_scaling_probe(sizes, nu, eta, deltas, seed=0) -> ScalingProbe:
    """Measure how the singular values of V_n scale with the cluster gap.

    One clustered geometry template (fixed seed, so gap jitter scales
    proportionally with delta) is instantiated per grid value; the singular
    values of V_n are recorded and each index is fitted with a log-log
    slope.  Theory predicts the slopes to group by cluster multiplicity:
    ell_m of them at m-1, m = 1..max(sizes).
    """
    from .signal_model import cluster_multiplicities, make_clustered_config

    deltas = check_real_vector(deltas, "deltas", min_len=2)
    rows = []
    for delta in deltas:
        spike, _ = make_clustered_config(len(sizes), sizes, float(delta), nu, eta, seed)
        rows.append(np.linalg.svd(square_vandermonde(spike.nodes), compute_uv=False))
    sigmas = np.asarray(rows)
    logd = np.log(deltas)
    slopes = np.array([np.polyfit(logd, np.log(sigmas[:, i]), 1)[0]
                       for i in range(sigmas.shape[1])])
    return ScalingProbe(deltas=deltas, sigmas=sigmas, slopes=slopes,
                        expected=expected_exponents(cluster_multiplicities(sizes)))


def dump_matrix_csv(matrix, path):
    """Write a complex matrix as CSV, one row-major entry per line: re,im."""
    arr = np.asarray(matrix, dtype=np.complex128)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("re,im\n")
        for v in arr.ravel(order="C"):
            fh.write(f"{v.real:.17g},{v.imag:.17g}\n")
