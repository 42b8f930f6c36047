"""Exception types shared across the package."""


class SchattenError(Exception):
    """Base class for errors raised by this package."""


class InputError(SchattenError, ValueError):
    """An argument is malformed or outside the accepted range."""


class DomainError(SchattenError, ValueError):
    """The argument is well-formed but the quantity is undefined there."""
