"""Exception types shared across the library."""


class StrataError(ValueError):
    """Base class for all validation errors raised by this library."""


class GraphConstructionError(StrataError):
    """Malformed multigraph input (unknown endpoint, duplicate vertex, ...)."""


class CapExceededError(StrataError):
    """An enumeration would exceed the configured edge cap."""


class ArrangementError(StrataError):
    """Line data does not define a nodal arrangement (coincident slopes,
    three concurrent lines, ...)."""


class SampleError(StrataError):
    """Unsupported or inconsistent stratum sample request."""
