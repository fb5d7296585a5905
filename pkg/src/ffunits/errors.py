"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input (bad expression, instance file, or flag value)."""


class ResourceLimitError(RuntimeError):
    """A configured search or enumeration bound was exceeded."""


class InternalCheckError(RuntimeError):
    """Two independent computations of the same fact disagreed.

    Raised only when a redundant cross-check fails; it always indicates a
    bug in this package, never bad input.
    """
