"""Exception types shared across the toolkit.

All inherit from ValueError so callers may catch broadly; the CLI maps
ParameterError to exit 2 (usage) and the data-shaped ones to exit 3.
"""


class ParameterError(ValueError):
    """A parameter violates an operation's precondition."""


class ShapeError(ValueError):
    """Array/image dimensions are inconsistent with each other."""


class LayoutError(ValueError):
    """A spectrum is in the wrong DC layout for the requested operation."""


class DegenerateInputError(ValueError):
    """Input is degenerate for the operation (constant channel, flat response)."""
