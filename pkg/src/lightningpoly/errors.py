"""Exception types shared across the package."""


class BranchCutError(ValueError):
    """Evaluation point lies on the branch cut (the negative real axis)."""


class PoleProximityError(ValueError):
    """Evaluation point is too close to a pole of the approximant."""


class GeometryError(ValueError):
    """Polygon input is not a simple counterclockwise polygon."""


class AccuracyError(RuntimeError):
    """A numerical routine could not meet its accuracy target.

    The ``achieved`` attribute holds the best error estimate available
    when the failure was detected, or None.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class RankError(RuntimeError):
    """Numerical rank deficiency or basis breakdown.

    ``effective_rank`` holds the numerical rank (or the degree at which
    orthogonalization broke down) when known.
    """

    def __init__(self, message, effective_rank=None):
        super().__init__(message)
        self.effective_rank = effective_rank
