"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class AccuracyError(RuntimeError):
    """A numerical routine could not certify the requested accuracy.

    Carries the best available estimate so callers can still inspect it.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class SampleRejected(RuntimeError):
    """A Monte Carlo sample was rejected (near-defective or unclassifiable)."""

    def __init__(self, message, sample_index=None, reason=None):
        super().__init__(message)
        self.sample_index = sample_index
        self.reason = reason or message


class ClassificationError(SampleRejected):
    """Real/complex classification failed (unpairable complex eigenvalue)."""


class TrackingError(RuntimeError):
    """Eigenvalue tracking under perturbation was ambiguous."""
