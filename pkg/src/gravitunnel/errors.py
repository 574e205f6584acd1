"""Exception types raised by the gravitunnel package."""


class TunnelError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(TunnelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PathError(TunnelError, ValueError):
    """A discrete path cannot be timed or simulated as given."""


class DegenerateSegmentError(PathError):
    """A zero-length segment sits on the surface, where the speed is zero."""


class InfiniteTimeError(PathError):
    """A positive-length segment has both endpoints on the surface."""


class QuadratureError(TunnelError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance.

    Attributes
    ----------
    worst_interval : (lo, hi, error) for the least-converged subinterval.
    error_estimate : total error estimate at the point of failure.
    evaluations : integrand evaluations performed before giving up.
    """

    def __init__(self, message, worst_interval=None, error_estimate=None,
                 evaluations=None):
        super().__init__(message)
        self.worst_interval = worst_interval
        self.error_estimate = error_estimate
        self.evaluations = evaluations


class RootFindError(TunnelError, ArithmeticError):
    """A bracketed root solve failed to reach its residual tolerance."""


class StalledTrajectoryError(TunnelError, RuntimeError):
    """The bead ran out of speed before reaching the far end of the tunnel.

    Attributes carry the turning point: ``tau``, ``arclength`` and ``rho``
    at the deepest progress made along the tunnel.
    """

    def __init__(self, message, tau=None, arclength=None, rho=None):
        super().__init__(message)
        self.tau = tau
        self.arclength = arclength
        self.rho = rho
