"""scikit-learn style estimator facade over the functional core.

Two estimators cover the two ways of presenting data:

- :class:`SpikeTrainEstimator` fits a spike train to a plain vector of
  consecutive unit-rate Fourier samples (``fit(X)`` with X complex 1-D).
- :class:`DecimatedSpikeEstimator` runs the full decimation pipeline
  against a :class:`~spikesr.signal_model.MeasurementOracle` and exposes
  the selected sampling plan.

Both follow the usual conventions: hyperparameters in ``__init__`` and
``get_params``/``set_params``, fitted state in trailing-underscore
attributes, ``predict(omegas)`` returning model Fourier samples.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .pipeline import decimated_sr
from .signal_model import MeasurementOracle
from .solvers import SampleVector, matrix_pencil, prony
from .validation import check_complex_vector, check_membership, check_order


def _model_samples(nodes, amps, omegas):
    w = np.asarray(omegas, dtype=np.float64)
    return np.exp(1j * np.multiply.outer(w, nodes)) @ amps


class SpikeTrainEstimator(BaseEstimator):
    """Recover a spike train from consecutive unit-rate Fourier samples.

    Parameters
    ----------
    n_spikes : int
        Model order n.
    method : str
        ``prony`` (needs exactly 2n samples) or ``matrix_pencil`` (needs
        at least 2n; extra samples improve robustness).
    pencil : int or None
        Pencil window for the matrix-pencil method; default K // 2.

    Attributes
    ----------
    nodes_ : ndarray
        Estimated node angles in (-pi, pi], ascending.
    amps_ : ndarray
        Matching complex amplitudes.
    phis_ : ndarray
        Unit-modulus node generators exp(i nodes_).
    """

    def __init__(self, n_spikes=1, method="prony", pencil=None):
        self.n_spikes = n_spikes
        self.method = method
        self.pencil = pencil

    def fit(self, X, y=None):
        """Fit from X, a 1-D complex vector of samples mu(0..K-1)."""
        n = check_order(self.n_spikes, "n_spikes")
        check_membership(self.method, ("prony", "matrix_pencil"), "method")
        X = check_complex_vector(np.asarray(X).ravel(), "X", min_len=2 * n)
        sv = SampleVector(X, rate=1.0)
        if self.method == "prony":
            est = prony(sv, n)
        else:
            est = matrix_pencil(sv, n, pencil=self.pencil)
        order = np.argsort(est.angles, kind="stable")
        self.nodes_ = est.angles[order]
        self.amps_ = est.amps[order]
        self.phis_ = est.phis[order]
        return self

    def predict(self, omegas):
        """Model Fourier samples at the given frequencies."""
        if not hasattr(self, "nodes_"):
            raise AttributeError("estimator is not fitted yet; call fit first")
        return _model_samples(self.nodes_, self.amps_, omegas)


class DecimatedSpikeEstimator(BaseEstimator):
    """Full decimated recovery driven by a measurement oracle.

    Parameters
    ----------
    n_spikes : int
    n_clusters : int
        Cluster count M steering the scoring statistic sigma_{M+1}.
    method : str
        Decimated solver, ``prony`` or ``matrix_pencil``.
    strategy : str
        Rate selection, ``score`` (default) or ``random``.

    Attributes
    ----------
    nodes_, amps_ : ndarray
        Recovered spike train (nodes ascending).
    plan_ : DecimationPlan
        Selected rate, shift and per-rate scores.
    result_ : RecoveryResult
        Full pipeline output.
    """

    def __init__(self, n_spikes=1, n_clusters=1, method="prony", strategy="score"):
        self.n_spikes = n_spikes
        self.n_clusters = n_clusters
        self.method = method
        self.strategy = strategy

    def fit(self, X, y=None):
        """Fit from X, a :class:`MeasurementOracle`."""
        if not isinstance(X, MeasurementOracle):
            raise TypeError(f"X must be a MeasurementOracle, got {type(X).__name__}")
        res = decimated_sr(X, self.n_spikes, self.n_clusters,
                           method=self.method, strategy=self.strategy)
        self.result_ = res
        self.nodes_ = res.est_nodes
        self.amps_ = res.est_amps
        self.plan_ = res.plan
        return self

    def predict(self, omegas):
        """Model Fourier samples at the given frequencies."""
        if not hasattr(self, "nodes_"):
            raise AttributeError("estimator is not fitted yet; call fit first")
        return _model_samples(self.nodes_, self.amps_, omegas)
