"""Exception hierarchy shared by all modules."""


class TunnelTimeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TunnelTimeError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class IncompatibleMediaError(TunnelTimeError, ValueError):
    """Media of different kinds (e.g. optical and quantum) were combined."""


class UnsupportedMediumError(TunnelTimeError, ValueError):
    """Lossy or gain media, which this package deliberately rejects."""


class NotTunnelingError(DomainError):
    """The barrier is propagating at the requested frequency."""


class NotTotalReflectionError(DomainError):
    """Total internal reflection does not hold for the given configuration."""


class GridTooCoarseError(DomainError):
    """Adjacent spectral samples are too far apart to unwrap the phase."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class NeedsMarginError(DomainError):
    """A derivative was requested too close to the edge of a frequency grid."""


class CoverageError(DomainError):
    """A pulse band is not covered by the spectrum it should be filtered with."""


class MeasurementError(TunnelTimeError, ValueError):
    """A pulse trace has no usable peak."""


class NoSolutionError(TunnelTimeError, ValueError):
    """An inverse-design search found no bracket for the requested target."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class ConfigurationError(TunnelTimeError, ValueError):
    """Invalid configuration file, override, or generator settings."""
