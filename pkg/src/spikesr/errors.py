"""Exception types shared across the package.

Every failure mode that callers are expected to distinguish gets its own class;
the recovery pipeline re-raises them with a stage tag so a failed run names the
stage that broke.
"""

from __future__ import annotations


class SpikeSRError(Exception):
    """Base class for all package-specific errors."""


class OutOfBandError(SpikeSRError):
    """A Fourier-sample query exceeded the oracle's bandwidth."""


class InfeasibleGeometryError(SpikeSRError):
    """Cluster parameters cannot be realized on the half-circle."""


class DegenerateSampleSetError(SpikeSRError):
    """A solver's linear system is singular or numerically unusable."""


class SolverFailureError(SpikeSRError):
    """Root finding or subspace extraction produced an unusable result."""


class ShiftInfeasibleError(SpikeSRError):
    """No co-prime sampling shift fits inside the available bandwidth."""


class AmplitudeUnderflowError(SpikeSRError):
    """An amplitude fell below the working floor during de-aliasing."""


class AmbiguousAliasError(SpikeSRError):
    """De-aliasing residual exceeded tolerance; no candidate is trustworthy."""


class InsufficientConsensusError(SpikeSRError):
    """The histogram method found fewer populated peaks than spikes."""


class PipelineError(SpikeSRError):
    """A pipeline stage failed; the message carries the stage tag."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage={stage}: {message}")
        self.stage = stage
