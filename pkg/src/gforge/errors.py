"""Exception hierarchy shared by all gforge modules."""

from __future__ import annotations


class GforgeError(Exception):
    """Base class for every error raised by gforge."""


class ParameterError(GforgeError, ValueError):
    """An argument violates an operation's preconditions."""


class FormatError(GforgeError, ValueError):
    """A serialized object (JSON file) is malformed."""


class RainbowTriangleError(GforgeError):
    """The input coloring is not a Gallai coloring.

    ``triangle`` holds the offending vertex triple.
    """

    def __init__(self, triangle: tuple[int, int, int]):
        self.triangle = triangle
        super().__init__(f"rainbow triangle at vertices {triangle}")


class InvalidPartitionError(GforgeError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            head += f"; ... ({more} more)"
        super().__init__(f"invalid Gallai partition: {head}")


class ConstructionError(GforgeError, RuntimeError):
    """A constructive procedure failed where success is guaranteed (a bug)."""
