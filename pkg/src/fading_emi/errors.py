"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(ValueError):
    """A fading-model or configuration parameter violates its constraints."""


class NoKnownReductionError(ValueError):
    """The model has no documented limiting counterpart."""


class QuadratureConvergenceError(RuntimeError):
    """Adaptive integration ran out of subdivisions.

    Carries the best available estimate and its residual error bound so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, estimate, residual):
        super().__init__(f"{message} (best estimate {estimate!r}, residual {residual:.3e})")
        self.estimate = estimate
        self.residual = residual
