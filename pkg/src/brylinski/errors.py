"""Exception types raised by the library."""


class BrylinskiError(Exception):
    """Base class for all library errors."""


class PoleError(BrylinskiError, ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""


class DomainError(BrylinskiError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class SingularCurveError(BrylinskiError, ValueError):
    """Curve parametrization has (near) zero speed."""


class DegenerateChartError(BrylinskiError, ValueError):
    """Surface chart is not an immersion at the requested point."""


class CoincidentPointsError(BrylinskiError, ValueError):
    """Kernel evaluated on the diagonal where it is singular."""


class ConvergenceRegionError(BrylinskiError, ValueError):
    """s lies outside the half-plane where the defining integral converges."""


class NonConvergenceError(BrylinskiError, ArithmeticError):
    """An extrapolation did not settle within the requested tolerance."""
