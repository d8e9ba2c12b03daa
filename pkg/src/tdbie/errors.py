"""Exception hierarchy shared by all modules."""


class TDBIEError(Exception):
    """Base class for every error raised by the package."""


class DomainError(TDBIEError, ValueError):
    """Argument outside the supported domain (order range, Re s <= 0, ...)."""


class SingularityError(TDBIEError, ValueError):
    """Evaluation point coincides with a kernel singularity."""


class SmoothnessError(TDBIEError, ValueError):
    """A derivative was requested beyond the smoothness the profile carries."""


class ResolutionError(TDBIEError, RuntimeError):
    """A truncation or search grid is too coarse for the requested accuracy."""


class ConfigError(TDBIEError, ValueError):
    """Scenario configuration does not validate; ``path`` names the field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
