"""Exception hierarchy for the wreath modules."""

from typing import Optional


class WreathError(Exception):
    """Base class for every error raised by this package."""


class StructureError(WreathError, ValueError):
    """Mismatched groups, unknown symbols or an illegal machine table."""


class LiteralParseError(WreathError, ValueError):
    """An element literal does not follow the literal grammar."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class WordParseError(WreathError, ValueError):
    """A word is not in the representative language.

    Args:
        word: The offending word (ASCII serialization)
        position: Index of the first offending symbol, or a cell index when
            ``unit`` is "cell"
        reason: Short description of the violated rule
        unit: "symbol" or "cell"
    """

    def __init__(self, word: str, position: int, reason: str, unit: str = "symbol"):
        self.word = word
        self.position = position
        self.reason = reason
        self.unit = unit
        super().__init__(f"{reason} at {unit} {position} in {word!r}")


class BallTooLargeError(WreathError, RuntimeError):
    """Breadth-first search visited more elements than allowed."""

    def __init__(self, cap: int, visited: int, radius_reached: int):
        self.cap = cap
        self.visited = visited
        self.radius_reached = radius_reached
        super().__init__(
            f"ball too large: {visited} elements visited (cap {cap}), "
            f"complete up to radius {radius_reached}"
        )


class RunBoundsExceeded(WreathError, RuntimeError):
    """A machine run ran out of silent steps or stack height before deciding."""

    def __init__(self, kind: str, limit: int, position: Optional[int] = None):
        self.kind = kind
        self.limit = limit
        self.position = position
        where = "" if position is None else f" at input position {position}"
        super().__init__(f"run bound exceeded: {kind} limit {limit}{where}")


class ResourceCapError(WreathError, RuntimeError):
    """Enumeration or tabulation exceeded its cap."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded cap {cap}")


class UnknownConstantError(WreathError, RuntimeError):
    """A padding constant could not be certified within the search bounds."""


class UsageError(WreathError, ValueError):
    """Command-line misuse."""
