"""Exception types shared across the package."""


class WarpQuantError(Exception):
    """Base class for all warpquant errors."""


class InvalidInput(WarpQuantError):
    """Input data violates a documented precondition."""


class EmptyInput(InvalidInput):
    """A sequence that must be non-empty is empty."""


class BandTooNarrow(WarpQuantError):
    """The Sakoe-Chiba radius cannot bridge the length gap between the series."""


class ConstraintViolation(WarpQuantError):
    """Scenario parameters break a monotonicity constraint."""


class RankDeficient(WarpQuantError):
    """A regression design matrix is numerically singular."""


class FlaggedChannelError(WarpQuantError):
    """Channels degenerated (constant after detrending) during preprocessing."""

    def __init__(self, channels):
        self.channels = list(channels)
        super().__init__("degenerate channels: " + ", ".join(self.channels))
