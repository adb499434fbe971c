"""Exception types shared across the package."""


class TorusGamesError(Exception):
    """Base class for all package errors."""


class NonStochasticError(TorusGamesError):
    """Kernel weights do not form a probability distribution."""


class ZeroOffsetWeightedError(TorusGamesError):
    """Kernel assigns positive weight to the zero offset."""


class SymmetryViolationError(TorusGamesError):
    """Kernel violates permutation or sign-flip symmetry.

    Carries the offending offset and the transformation that exposed it.
    """

    def __init__(self, offset, transform, message=None):
        self.offset = tuple(offset)
        self.transform = transform
        super().__init__(
            message
            or f"kernel weight at {self.offset} not invariant under {transform}"
        )


class DimensionMismatchError(TorusGamesError):
    """Vector or matrix dimensions do not agree."""


class NonSimplexInputError(TorusGamesError):
    """Frequency vector is not on the probability simplex."""


class DegenerateP1Error(TorusGamesError):
    """Leading coalescence probability is zero; modified game undefined."""


class DegenerateCubicError(TorusGamesError):
    """A boundary derivative of the reaction cubic vanishes; no S-class."""


class RuleMismatchError(TorusGamesError):
    """Coalescence estimates supplied for the wrong update rule."""


class SignDisagreementError(TorusGamesError):
    """Internal consistency failure between two routes to the same sign."""


class NegativeRateError(TorusGamesError):
    """Selection strength large enough to make a Birth-Death rate negative."""


class SimplexDriftError(TorusGamesError):
    """Integrated trajectory left the simplex beyond tolerance."""


class StepUnderflowError(TorusGamesError):
    """ODE integrator failed to advance."""


class StabilityViolationError(TorusGamesError):
    """Explicit PDE scheme parameters violate the stability bound."""


class NonConvergenceError(TorusGamesError):
    """Fixed-point iteration did not converge; carries the last residual."""

    def __init__(self, residual, iterations, message=None):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            message
            or f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


class RegimeViolationError(TorusGamesError):
    """Selection strength rule leaves the intermediate (ODE) window."""


class HorizonTooSmallWarning(UserWarning):
    """Advisory: estimated post-horizon coalescence mass exceeds 3x std error."""
