"""Full 8-puzzle state-space atlas: graph, traced search, layouts, explorer service."""

from .errors import (
    AtlasError,
    BadChecksum,
    BadMagic,
    FileFormatError,
    IdOutOfRange,
    SessionTerminated,
    UnreachableState,
    VersionMismatch,
)

__all__ = [
    "AtlasError",
    "BadChecksum",
    "BadMagic",
    "FileFormatError",
    "IdOutOfRange",
    "SessionTerminated",
    "UnreachableState",
    "VersionMismatch",
]
