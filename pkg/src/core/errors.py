"""
Exception hierarchy shared by all CoboScope modules.
"""


class CoboScopeError(Exception):
    """Base class for every error raised by the package."""


class SeriesError(CoboScopeError):
    """Table mismatch, invalid substitution or invalid reversion input."""


class FormalGroupLawError(CoboScopeError):
    """A formal group law does not have the requested shape."""


class ChernError(CoboScopeError):
    """Degree or dimension mismatch, or a construction the ring model cannot present."""


class CobordismError(CoboScopeError):
    """Singular Chern matrix, inconsistent Milnor system or dimension mismatch."""


class DTError(CoboScopeError):
    """Invalid q-series input or non-constructible degeneration."""


class VertexError(CoboScopeError):
    """Localization oracle failure (bounds, unsupported space, non-integral result)."""


class BoundError(CoboScopeError):
    """A configured bound was exceeded or is invalid."""

    def __init__(self, bound: str, value, limit=None):
        self.bound = bound
        self.value = value
        self.limit = limit
        if limit is None:
            msg = f"invalid value for bound '{bound}': {value}"
        else:
            msg = f"bound '{bound}' exceeded: {value} > {limit}"
        super().__init__(msg)


class SpaceParseError(CoboScopeError):
    """Syntax error in a space or divisor expression."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")
