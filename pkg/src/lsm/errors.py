class LsmError(Exception):
    """Base class for errors raised by this package."""


class GeometryError(LsmError, ValueError):
    pass


class InputError(LsmError, ValueError):
    """Evaluation inputs violate a precondition (e.g. vehicle wider than lane)."""
