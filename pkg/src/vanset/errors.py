"""Exception hierarchy shared by the whole package."""


class VansetError(Exception):
    """Base class; ``kind`` is the machine-readable tag the CLI prints."""

    kind = "internal"


class InputError(VansetError, ValueError):
    kind = "input"


class ResourceError(VansetError):
    """A configured cap (elements, lattice, search, ...) would be exceeded."""

    kind = "resource"


class ConsistencyError(VansetError):
    """An internal invariant failed; indicates a bug, not bad input."""

    kind = "consistency"
