"""Exception types shared across the package."""


class WebfoamError(Exception):
    """Base class for errors raised by this package."""


class InputError(WebfoamError):
    """Malformed input file or unparsable text."""


class ValidationError(WebfoamError):
    """Structurally invalid object (e.g. a vertex of the wrong valence)."""


class InternalConsistencyError(WebfoamError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug (or a violated mathematical expectation),
    never bad user input.
    """
