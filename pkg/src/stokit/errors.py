"""Exception types shared across the toolkit.

All of these subclass ValueError so existing ``except ValueError`` code keeps
working; the CLI maps them onto exit codes (validation -> 2, data/runtime -> 1).
"""


class StokitError(ValueError):
    """Base class for all toolkit errors."""


class DomainError(StokitError):
    """A parameter is outside its documented domain."""


class SizeError(StokitError):
    """A count, length, or shape precondition is violated."""


class StabilityError(StokitError):
    """An explicit time-stepping scheme would be unstable."""


class GridError(StokitError):
    """A spatial grid does not divide the domain."""


class PositivityError(StokitError):
    """Strictly positive data was required but not supplied."""


class DegenerateError(StokitError):
    """The input is degenerate (zero spread, zero threshold, zero horizon)."""


class SchemaError(StokitError):
    """An input file does not match the expected schema."""
