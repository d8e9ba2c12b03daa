"""Retarded layer potentials and boundary operators on circles and spheres."""

from .errors import (
    ConfigError,
    DomainError,
    ResolutionError,
    SingularityError,
    SmoothnessError,
    TDBIEError,
)

__version__ = "0.1.0"
