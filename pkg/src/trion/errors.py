"""Exception types shared across the package."""


class QuadratureError(RuntimeError):
    """A numerical integral failed its internal consistency check."""


class NonexistentSeriesError(ValueError):
    """The requested (L, parity, statistics) series has no states at all."""
