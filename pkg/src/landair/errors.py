"""Exception types shared across the toolkit."""


class LandAirError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class InsufficientDataError(LandAirError, ValueError):
    pass


class OutOfRangeError(LandAirError, ValueError):
    """Evaluation requested outside a fitted curve's tabulated range."""


class NoFlyError(OutOfRangeError):
    """Hover thrust demand exceeds what the powertrain can deliver."""


class MapFormatError(LandAirError, ValueError):
    pass


class NoPathError(LandAirError):
    pass


class InconsistentPathError(LandAirError, ValueError):
    pass
