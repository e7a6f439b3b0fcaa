class SizingError(ValueError):
    """A requested table does not fit the configured limits."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class CacheError(OSError):
    """Binary cache file is malformed or fails its checksum."""


class RangeError(ValueError):
    """Requested point lies outside the computed table."""


class ParameterError(ValueError):
    """Invalid tuning or indexing parameter."""
