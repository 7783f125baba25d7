"""Exception hierarchy shared by the series engine, the solvers and the CLI."""


class BohrError(Exception):
    """Base class for every error raised by this package."""


class SeriesPreconditionError(BohrError, ValueError):
    """A series operation was called on input violating its normalization."""


class DivergenceError(BohrError):
    """A truncated sum could not be certified at the requested argument."""

    def __init__(self, message: str, r: float | None = None, tail: float | None = None):
        super().__init__(message)
        self.r = r
        self.tail = tail


class QuadratureError(BohrError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class ConditionViolated(BohrError):
    """The radius equation has LHS(0+) >= RHS, so no admissible radius exists."""


class NoRootInRange(BohrError):
    """LHS - RHS stays negative on the whole scanned interval."""


class DivergenceBeforeRoot(DivergenceError):
    """Tail certification failed before the first sign change was reached."""
