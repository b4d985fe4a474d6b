"""Exception hierarchy shared by all heis modules.

Every error raised by the library derives from :class:`HeisError`, so callers
(and the CLI exit-code mapping) can distinguish "bad data", "bad config" and
"numerical guard tripped" without string matching.
"""


class HeisError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(HeisError):
    """Operands live on different grids or have incompatible shapes."""


class MembershipError(HeisError):
    """Group element violates a subgroup constraint."""


class OffGridError(HeisError):
    """A requested evaluation point does not land on a grid node."""


class OffGridShift(HeisError):
    """A group shift is not an integer multiple of the grid step."""


class GridIncompatible(HeisError):
    """Two grids cannot be combined (e.g. torus nodes not on the line grid)."""


class IndexMismatch(HeisError):
    """Quasi-periodicity index of a torus field disagrees with the parameters."""


class SupportOverflow(HeisError):
    """Signal mass outside the truncation window exceeds the allowed tail."""


class NonFiniteError(HeisError):
    """Sampled or computed values contain NaN or infinity."""


class DivergenceGuard(HeisError):
    """A series term exceeded the magnitude guard (1e100)."""


class OverflowGuard(HeisError):
    """A pointwise exponent weight would overflow double precision."""


class OrderTooLarge(HeisError):
    """Requested ladder order exceeds the supported cap."""


class ConfigError(HeisError):
    """Run configuration failed validation."""


class InputFormatError(HeisError):
    """CSV input does not match the expected schema."""
