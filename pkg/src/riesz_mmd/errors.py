"""Exception types shared across the library."""


class DimensionMismatchError(ValueError):
    """Two point sets live in different ambient dimensions."""


class UnsupportedKernelError(ValueError):
    """The sliced fast path only handles the negative distance kernel.

    Raised when a sliced estimator is asked to work with any other kernel;
    callers should fall back to the quadratic-cost naive gradient.
    """


class FlowDivergenceError(RuntimeError):
    """A particle flow produced non-finite or runaway coordinates.

    Attributes
    ----------
    step : int
        Index of the update that diverged.
    """

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"particle flow diverged at step {step}")
