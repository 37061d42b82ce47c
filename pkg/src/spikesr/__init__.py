"""spikesr: super-resolution of spike trains from band-limited Fourier samples.

The library recovers a discrete measure sum_j a_j delta(x - x_j) from noisy
samples of its Fourier transform on [-Omega, Omega].  Below the Rayleigh
limit this is badly conditioned at unit sampling rate; sampling at an integer
rate rho dilates the nodes, restores conditioning, and costs only an aliasing
ambiguity that one extra co-prime-shifted sample grid resolves.  The rate is
chosen automatically by scoring candidates with the (M+1)-th singular value
of a small Toeplitz matrix of decimated samples.
"""

from .dealias import (
    AliasedPair,
    alias_anchor,
    bezout_coefficients,
    candidate_roots,
    dealias_node,
    match_estimates,
    shift_power_from_amps,
    snap_to_candidate,
    wrap_angle,
)
from .decimation import (
    CandidateSet,
    DecimationPlan,
    RhoScore,
    attach_separations,
    candidate_rhos,
    coprime_shift,
    rank_scores,
    score_rho,
    select_rho,
    sweep_scores,
)
from .errors import (
    AmbiguousAliasError,
    AmplitudeUnderflowError,
    DegenerateSampleSetError,
    InfeasibleGeometryError,
    InsufficientConsensusError,
    OutOfBandError,
    PipelineError,
    ShiftInfeasibleError,
    SolverFailureError,
    SpikeSRError,
)
from .estimators import DecimatedSpikeEstimator, SpikeTrainEstimator
from .pipeline import (
    METHODS,
    BenchResult,
    ExperimentSpec,
    GeometrySpec,
    OptimalityResult,
    RecoveryResult,
    SweepResult,
    bench_experiment,
    decimated_sr,
    error_factors,
    match_to_truth,
    optimality_experiment,
    rho_sweep_experiment,
    run_method,
)
from .signal_model import (
    NOISE_KINDS,
    ClusterConfig,
    MeasurementOracle,
    SpikeTrain,
    cluster_multiplicities,
    delta_for_srf,
    dilated_separation,
    fourier_sample,
    make_clustered_config,
    make_oracle,
    min_separation,
    srf,
    wrap_dist,
)
from .solvers import (
    AmplitudeFit,
    NodeEstimate,
    SampleVector,
    amplitude_ls,
    decimated_prony_histogram,
    matrix_pencil,
    prony,
    unit_grid_count,
)
from .spectral import (
    SampleToeplitz,
    ScalingProbe,
    congruence_ratios,
    det_product_identity,
    dump_matrix_csv,
    expected_exponents,
    factorization_residual,
    ostrowski_ratios,
    square_vandermonde,
    toeplitz_from_samples,
    vandermonde,
    vandermonde_scaling_probe,
)

__version__ = "0.1.0"

__all__ = [
    "AliasedPair", "AmbiguousAliasError", "AmplitudeFit", "AmplitudeUnderflowError",
    "BenchResult", "CandidateSet", "ClusterConfig", "DecimatedSpikeEstimator",
    "DecimationPlan", "DegenerateSampleSetError", "ExperimentSpec", "GeometrySpec",
    "InfeasibleGeometryError", "InsufficientConsensusError", "MeasurementOracle",
    "METHODS", "NOISE_KINDS", "NodeEstimate", "OptimalityResult", "OutOfBandError",
    "PipelineError", "RecoveryResult", "RhoScore", "SampleToeplitz", "SampleVector",
    "ScalingProbe", "ShiftInfeasibleError", "SolverFailureError", "SpikeSRError",
    "SpikeTrain", "SpikeTrainEstimator", "SweepResult",
    "alias_anchor", "amplitude_ls", "attach_separations", "bench_experiment",
    "bezout_coefficients",
    "candidate_rhos", "candidate_roots", "cluster_multiplicities", "congruence_ratios",
    "coprime_shift", "dealias_node", "decimated_prony_histogram", "decimated_sr",
    "delta_for_srf", "det_product_identity", "dilated_separation", "dump_matrix_csv",
    "error_factors", "expected_exponents", "factorization_residual", "fourier_sample",
    "make_clustered_config", "make_oracle", "match_estimates", "match_to_truth",
    "min_separation", "matrix_pencil", "optimality_experiment", "ostrowski_ratios",
    "prony", "rank_scores", "rho_sweep_experiment", "run_method", "score_rho",
    "select_rho", "shift_power_from_amps", "snap_to_candidate",
    "square_vandermonde", "srf",
    "sweep_scores", "toeplitz_from_samples", "unit_grid_count", "vandermonde",
    "vandermonde_scaling_probe", "wrap_angle", "wrap_dist",
]
