"""Exception types shared across the package.

The CLI maps ParameterError (and subclasses) to exit code 1 and OSError
to exit code 2.
"""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class DimensionError(ParameterError):
    """Array shapes do not agree."""


class TractabilityError(ParameterError):
    """A brute-force oracle was asked for an instance above its guard."""


class DivergenceError(ArithmeticError):
    """An iterative solver produced a non-finite or degenerate iterate."""
