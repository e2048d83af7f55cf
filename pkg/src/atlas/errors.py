"""Shared exception types."""


class AtlasError(Exception):
    """Base class for all domain errors; CLI maps these to exit code 1."""


class UnreachableState(AtlasError):
    """State has the wrong permutation parity and is not in the reachable space."""


class IdOutOfRange(AtlasError):
    """Dense state id outside 0..181439."""


class SessionTerminated(AtlasError):
    """step() called on a session whose status is no longer Running."""


class FileFormatError(AtlasError):
    """Base class for binary file rejection."""


class BadMagic(FileFormatError):
    pass


class VersionMismatch(FileFormatError):
    pass


class BadChecksum(FileFormatError):
    pass
