"""Eigenvector self-overlap statistics of real and complex Ginibre ensembles.

Closed-form finite-N mean self-overlaps and spectral densities, their bulk /
edge / depletion scaling limits, the corresponding self-overlap probability
densities, and a reproducible Monte Carlo engine that samples matrices,
computes bi-orthogonal eigenvector overlaps, and statistically verifies each
formula.
"""

from . import distributions, mc, records, specfun, stats, theory
from .errors import (AccuracyError, ClassificationError, DomainError,
                     SampleRejected, TrackingError)
from .mc import EnsembleConfig, run_campaign
from .theory import GINOE, GINUE

__version__ = "0.1.0"

__all__ = [
    "specfun", "theory", "distributions", "mc", "stats", "records",
    "EnsembleConfig", "run_campaign", "GINOE", "GINUE",
    "DomainError", "AccuracyError", "SampleRejected", "ClassificationError",
    "TrackingError", "__version__",
]
