"""Resolving decimation aliases with a co-prime shifted sample set.

A generator phi = exp(i rho x) pins the node x only up to the rho-th roots:
the candidates (arg(phi) + 2 pi m) / rho, m = 0..rho-1, are spaced 2 pi / rho
apart.  A second estimate phi_t = exp(i t x) with gcd(rho, t) = 1 breaks the
tie: Bezout coefficients u rho + v t = 1 give

    u * arg(phi_rho) + v * arg(phi_t)  =  x   (mod 2 pi),

and the final answer snaps that combination to the nearest candidate, which
tolerates phase noise up to about pi / (rho * max(|u|, |v|)) in the raw
estimates while retaining the (far more accurate) decimated phase.

phi_t itself is read off the ratio of two amplitude fits: the shifted-grid
fit returns a_j exp(i t x_j), the unshifted one a_j, and their ratio has
modulus ~1 and phase t x_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import AmbiguousAliasError, AmplitudeUnderflowError
from .signal_model import TWO_PI, wrap_dist
from .validation import check_order, check_positive


@dataclass(frozen=True)
class AliasedPair:
    """Generator estimates at two co-prime rates for one node."""

    phi_rho: complex
    phi_t: complex
    rho: int
    t: int

    def __post_init__(self):
        check_order(self.rho, "rho")
        if self.t < 0 or int(self.t) != self.t:
            raise ValueError(f"t must be a non-negative integer, got {self.t!r}")
        if math.gcd(self.rho, int(self.t)) != 1:
            raise ValueError(f"rho={self.rho} and t={self.t} are not co-prime")
        for name in ("phi_rho", "phi_t"):
            val = getattr(self, name)
            if val == 0:
                raise ValueError(f"{name} must be nonzero")


def bezout_coefficients(a: int, b: int) -> tuple:
    """(u, v) with u*a + v*b == gcd(a, b), via the extended Euclid scheme."""
    old_r, r = int(a), int(b)
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    return old_u, old_v


def wrap_angle(theta) -> float:
    """Reduce an angle to (-pi, pi]."""
    w = -(np.mod(-np.asarray(theta, dtype=np.float64) + math.pi, TWO_PI) - math.pi)
    return float(w) if np.ndim(theta) == 0 else w


def candidate_roots(phi, rho) -> np.ndarray:
    """The rho candidate angles x with exp(i rho x) = phi/|phi|, ascending.

    Candidates are (arg(phi) + 2 pi m) / rho for m = 0..rho-1, wrapped to
    (-pi, pi]; consecutive candidates are exactly 2 pi / rho apart on the
    circle.
    """
    rho = check_order(rho, "rho")
    if phi == 0:
        raise ValueError("phi must be nonzero")
    theta = float(np.angle(phi))
    cands = (theta + TWO_PI * np.arange(rho)) / rho
    return np.sort(wrap_angle(cands))


def shift_power_from_amps(amp_base, amp_shift, floor) -> complex:
    """Estimate exp(i t x) as the normalized ratio of two amplitude fits.

    ``amp_base`` is the fit on the unshifted grid (a_j), ``amp_shift`` the
    fit on the grid shifted by t (a_j exp(i t x_j)).  Raises
    ``AmplitudeUnderflowError`` when either fit falls below ``floor``, in
    which case the phase of the ratio is untrustworthy.
    """
    floor = check_positive(floor, "floor")
    if abs(amp_base) < floor or abs(amp_shift) < floor:
        raise AmplitudeUnderflowError(
            f"amplitude below floor {floor:.3g}: |base|={abs(amp_base):.3g}, "
            f"|shift|={abs(amp_shift):.3g}")
    ratio = complex(amp_shift) / complex(amp_base)
    return ratio / abs(ratio)


def alias_anchor(pair: AliasedPair) -> float:
    """Bezout phase combination u*arg(phi_rho) + v*arg(phi_t), wrapped.

    With u rho + v t = 1 this equals the node angle modulo the phase noise
    of the two estimates, amplified by |u| and |v|.
    """
    u, v = bezout_coefficients(pair.rho, int(pair.t))
    theta_r = float(np.angle(pair.phi_rho))
    theta_t = float(np.angle(pair.phi_t))
    return wrap_angle(u * theta_r + v * theta_t)


def snap_to_candidate(anchor, phi_rho, rho) -> tuple:
    """Nearest rho-th-root candidate to an anchor angle, with its residual.

    Returns ``(node, residual)`` where ``node`` is the candidate of
    ``candidate_roots(phi_rho, rho)`` closest to ``anchor`` in wrapped
    distance and ``residual`` is that distance.  Never raises on a poor
    snap; callers decide what residual they tolerate.
    """
    cands = candidate_roots(phi_rho, rho)
    dists = wrap_dist(cands, wrap_angle(anchor))
    j = int(np.argmin(dists))
    return float(cands[j]), float(dists[j])


def dealias_node(pair: AliasedPair, tol=None) -> float:
    """Recover the node angle from a co-prime pair of generator estimates.

    Combines the two phases with Bezout coefficients, snaps to the nearest
    rho-th-root candidate of phi_rho, and validates the snap residual
    against ``tol`` (default pi / (4 rho)).

    Returns
    -------
    float
        The node estimate in (-pi, pi].

    Raises
    ------
    AmbiguousAliasError
        If the Bezout combination lands further than ``tol`` from every
        candidate.
    """
    rho, t = pair.rho, int(pair.t)
    if tol is None:
        tol = math.pi / (4 * rho)
    node, resid = snap_to_candidate(alias_anchor(pair), pair.phi_rho, rho)
    if resid > tol:
        raise AmbiguousAliasError(
            f"snap residual {resid:.3g} exceeds tolerance {tol:.3g} "
            f"(rho={rho}, t={t})")
    return node


def match_estimates(phis_a, phis_b) -> np.ndarray:
    """Pair two generator sets by minimal total wrapped angular distance.

    Returns ``perm`` with entry i giving the index in ``phis_b`` assigned
    to ``phis_a[i]`` (optimal assignment, not greedy).
    """
    a = np.angle(np.asarray(phis_a, dtype=np.complex128))
    b = np.angle(np.asarray(phis_b, dtype=np.complex128))
    if a.size != b.size:
        raise ValueError(f"sets differ in size: {a.size} vs {b.size}")
    cost = wrap_dist(a[:, None], b[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(a.size, dtype=np.int64)
    perm[rows] = cols
    return perm
