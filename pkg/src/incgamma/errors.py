"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class SectorError(DomainError):
    """The argument lies outside the sector in which the formula is valid.

    The message names the certified sector and, where one exists, the
    connection-formula route that reaches the requested point.
    """


class GeneratorConflictError(RuntimeError):
    """Two exact coefficient generators disagree; the tables are unusable."""


class QuadratureError(RuntimeError):
    """A quadrature did not converge within the allowed refinement levels.

    Carries the best estimate obtained (``best``) and the refinement
    diagnostics (``levels``, ``est_error``) so callers can inspect or
    retry with a different policy.
    """

    def __init__(self, message, best=None, est_error=None, levels=None):
        super().__init__(message)
        self.best = best
        self.est_error = est_error
        self.levels = levels


class VerificationError(RuntimeError):
    """A reproduction check against pinned reference digits failed."""
