"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration field is missing, malformed, or out of range."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config field '{field}': {message}")


class EmptyAlignmentRegionError(ValueError):
    """No instances (or no weight mass) fall in the alignment region."""


class DegenerateObjectiveError(ValueError):
    """A training objective has no usable instances (e.g. all weights zero)."""


class OptimizationDivergedError(RuntimeError):
    """The optimizer produced a non-finite value or gradient."""

    def __init__(self, iteration, message="non-finite objective or gradient"):
        self.iteration = iteration
        super().__init__(f"{message} at iteration {iteration}")


class MissingRegionInfoError(ValueError):
    """Oracle routing was requested but region labels are unavailable."""


class PredictionTableError(ValueError):
    """An external prediction table violates the expected schema."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column '{column}'")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class BoundViolationError(AssertionError):
    """A quantity violated a bound that is supposed to hold mathematically."""


class AtOptimumError(ValueError):
    """A directional quantity is undefined because the gradient vanishes."""
