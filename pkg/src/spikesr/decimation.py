"""Decimation-rate selection via the sample-Toeplitz singular spectrum.

Sampling at rate rho dilates the nodes to rho * x_j (mod 2*pi).  A good rho
spreads the dilated nodes as far apart as possible while keeping the 2n-1
scoring samples mu(rho k) inside the band.  Admissible integer rates come
from the interval

    I = [Omega / (2 (2n-1)), Omega / (2n-1)],

whose upper end guarantees in-band sampling and whose lower end keeps the
best achievable dilated separation within a factor of the optimum.  Each
candidate is scored by sigma_{M+1} of its sample-Toeplitz matrix: with M
clusters the leading M singular values are O(1) while the (M+1)-th tracks
the square of the dilated minimal separation, so the argmax favors rates
that unfold every cluster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ShiftInfeasibleError
from .signal_model import MeasurementOracle
from .spectral import toeplitz_from_samples
from .validation import check_order, check_positive


@dataclass(frozen=True)
class CandidateSet:
    """Integer rates drawn from the admissible interval.

    ``degenerate`` marks the fallback case where the interval contains no
    integer and rho = 1 is returned alone.
    """

    rhos: tuple
    lo: float
    hi: float
    degenerate: bool = False


@dataclass(frozen=True)
class RhoScore:
    """Score record for one candidate rate.

    ``delta_rho`` is the dilated minimal separation; it requires ground
    truth and stays None in blind runs.
    """

    rho: int
    sigma: float
    delta_rho: float | None = None


@dataclass(frozen=True)
class DecimationPlan:
    """Everything the pipeline decided about sampling geometry."""

    rho: int
    t: int
    n_samples: int
    lo: float
    hi: float
    scores: tuple
    strategy: str = "score"


def candidate_rhos(omega, n) -> CandidateSet:
    """Integer decimation rates admissible for bandwidth omega and order n.

    Returns all integers in I = [omega / (2 (2n-1)), omega / (2n-1)].  When
    the interval contains none (omega too small), returns rho = 1 flagged
    degenerate.
    """
    omega = check_positive(omega, "omega")
    n = check_order(n, "n")
    span = 2 * n - 1
    lo = omega / (2 * span)
    hi = omega / span
    first = max(1, math.ceil(lo - 1e-12))
    last = math.floor(hi + 1e-12)
    if last < first:
        return CandidateSet(rhos=(1,), lo=lo, hi=hi, degenerate=True)
    return CandidateSet(rhos=tuple(range(first, last + 1)), lo=lo, hi=hi)


def score_rho(oracle: MeasurementOracle, rho, n, n_clusters) -> RhoScore:
    """Score one candidate rate by sigma_{M+1} of its sample Toeplitz.

    Queries mu(rho k) for k = 0..2n-2 (raises if the top query leaves the
    band) and returns the (n_clusters + 1)-th singular value, descending
    order, 1-based.
    """
    rho = check_order(rho, "rho")
    n = check_order(n, "n", minimum=2)
    m = check_order(n_clusters, "n_clusters")
    if m >= n:
        raise ValueError(f"n_clusters={m} must be below n={n}")
    samples = oracle.eval_many(float(rho) * np.arange(2 * n - 1))
    svals = toeplitz_from_samples(samples, rho).singular_values()
    return RhoScore(rho=rho, sigma=float(svals[m]))


def sweep_scores(oracle: MeasurementOracle, n, n_clusters, rhos=None) -> list:
    """Score every candidate rate; ``rhos`` overrides the default set."""
    if rhos is None:
        rhos = candidate_rhos(oracle.omega_max, n).rhos
    return [score_rho(oracle, rho, n, n_clusters) for rho in rhos]


def attach_separations(scores, nodes) -> list:
    """Fill ``delta_rho`` on score records from known ground-truth nodes."""
    from .signal_model import dilated_separation

    return [replace(s, delta_rho=dilated_separation(nodes, s.rho)) for s in scores]


def select_rho(scores) -> int:
    """The rate with maximal score; ties break toward the smaller rho."""
    if not scores:
        raise ValueError("no scores to select from")
    best = min(scores, key=lambda s: (-s.sigma, s.rho))
    return int(best.rho)


def rank_scores(scores) -> list:
    """Scores ordered best first (descending sigma, ascending rho)."""
    return sorted(scores, key=lambda s: (-s.sigma, s.rho))


def coprime_shift(rho, omega, n, n_samples=None) -> int:
    """Smallest shift t >= 2 co-prime with rho that keeps queries in band.

    The shifted sample set is {rho k + t : k = 0..K-1} with K = n_samples
    (default 2n-1), so feasibility requires rho (K-1) + t <= omega.  For
    rho = 1 no de-aliasing is needed and 0 is returned.
    """
    rho = check_order(rho, "rho")
    omega = check_positive(omega, "omega")
    n = check_order(n, "n")
    if rho == 1:
        return 0
    K = check_order(n_samples, "n_samples") if n_samples is not None else 2 * n - 1
    budget = math.floor(omega - rho * (K - 1) + 1e-9)
    if budget < 2:
        raise ShiftInfeasibleError(
            f"no room for a shift: rho={rho}, K={K} leaves budget {budget} < 2")
    for t in range(2, budget + 1):
        if math.gcd(t, rho) == 1:
            return t
    raise ShiftInfeasibleError(
        f"no co-prime shift for rho={rho} within budget {budget}")
