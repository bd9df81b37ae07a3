"""Exception hierarchy shared by every module of the package."""


class RossbyError(Exception):
    """Base class for all package errors."""


class BadParameter(RossbyError, ValueError):
    """A parameter is outside its admissible set (H <= 0, n < 1, kappa <= 0, ...)."""


class ConstraintViolation(BadParameter):
    """A family-specific inequality (e.g. ``k_z < K_r``) does not hold."""


class ResonantDepth(RossbyError, ValueError):
    """The denominator of the resonance constant M is numerically zero."""


class DomainError(RossbyError, ValueError):
    """A vertical coordinate lies outside the water column ``[0, H]``."""


class MixedWavenumbers(BadParameter):
    """Horizontal modes with different wavenumbers cannot be superposed."""


class WavenumberMismatch(BadParameter):
    """The horizontal mode's wavenumber differs from the family's."""


class OutOfEnvelope(RossbyError, ValueError):
    """A special-function argument lies outside the supported range."""


class EvaluationError(RossbyError, ArithmeticError):
    """A verification probe produced a non-finite value."""


class ConfigError(RossbyError):
    """A run configuration could not be parsed or is inconsistent."""


class FieldIOError(RossbyError, OSError):
    """Writing or reading an exported file failed."""
