"""Exception types shared across the package."""


class SymsegError(Exception):
    """Base class for all errors raised by this package."""


class PnmDecodeError(SymsegError):
    """Malformed or unsupported PNM data; message names the offending field."""


class ParameterError(SymsegError):
    """A parameter is outside its documented domain."""


class DimensionError(SymsegError):
    """An image is too small for the requested operation."""


class DegenerateDataError(SymsegError):
    """Input data cannot support the requested fit (too few samples,
    constant regressor, or too few usable boundary rows)."""


class SingularSystemError(SymsegError):
    """A linear system is singular or numerically too close to singular."""


class PipelineError(SymsegError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause
