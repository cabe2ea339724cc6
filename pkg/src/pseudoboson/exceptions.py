"""Exception hierarchy shared by all modules."""


class PseudoBosonError(ValueError):
    """Base class for every error raised by this package."""


class ParameterDomainError(PseudoBosonError):
    """A family parameter or input lies outside its admissible domain."""


class DimensionError(PseudoBosonError):
    """The truncation dimension is too small for the requested construction."""


class ConstructionError(PseudoBosonError):
    """A constructed object violates one of its defining constraints."""


class TruncationError(PseudoBosonError):
    """Too much weight sits at the truncation edge; increase ``dim`` or ``n_max``."""


class DegeneratePairingError(PseudoBosonError):
    """Two states that must be bi-normalized have (numerically) zero overlap."""


class NumericalDegradationError(PseudoBosonError):
    """A verified identity degraded beyond its hard limit."""


class QuadratureError(PseudoBosonError):
    """A quadrature rule is out of range or not exact for the requested integrand."""


class IntegrationError(PseudoBosonError):
    """An integrand does not decay fast enough for Gauss-Hermite integration."""
