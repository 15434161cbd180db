"""Exception hierarchy shared by every app of the solver."""


class SpectralSolverError(Exception):
    """Base class for all solver errors."""


class ConfigurationError(SpectralSolverError):
    """A configuration file or override could not be turned into a problem."""

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = errors or {}


class InvalidRatioError(SpectralSolverError, ValueError):
    pass


class DomainError(SpectralSolverError, ValueError):
    """A point, side or derivative order outside the admissible domain."""


class UnderResolvedModeError(SpectralSolverError, ValueError):
    pass


class AsymptoticsError(SpectralSolverError):
    pass


class NonorthogonalDataError(SpectralSolverError):
    """Boundary data has a component along a resonant mode."""

    def __init__(self, k, projection=None):
        self.k = k
        self.projection = projection
        message = f'nonorthogonal data at resonant mode {k} (k={k})'
        if projection is not None:
            message += f', relative projection {projection:.3e}'
        super().__init__(message)
