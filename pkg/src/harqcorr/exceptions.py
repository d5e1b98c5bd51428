"""Exception hierarchy shared by all numerical modules."""


class HarqError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HarqError, ValueError):
    """An argument lies outside the mathematical domain of the routine."""


class DegenerateCorrelationError(DomainError):
    """|rho| == 1: the fading is fully correlated and the mixture is undefined."""


class ConvergenceError(HarqError, ArithmeticError):
    """A series, quadrature or iteration did not reach its tolerance.

    ``residual`` carries the last achieved error estimate.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (residual={residual:.3g})")
        self.residual = residual


class GridError(HarqError, ValueError):
    """A log-domain grid does not cover the requested evaluation point."""


class ResourceError(HarqError, MemoryError):
    """A requested enumeration exceeds the configured size cap."""


class InfeasibleTargetError(HarqError, ValueError):
    """No design satisfies the requested outage target."""
