"""Exception types shared across the pipeline."""


class TopikrankError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TopikrankError):
    """Bad input: malformed file content, out-of-range ids, invalid config."""


class ArtifactMismatchError(ValidationError):
    """Artifacts from different pipeline runs were mixed (corpus hash disagreement)."""


class ConvergenceError(TopikrankError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
