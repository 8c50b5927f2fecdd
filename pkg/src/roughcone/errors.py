"""Exception types shared across the package."""


class RoughconeError(Exception):
    """Base class for errors raised by this package."""


class InputError(RoughconeError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class DimensionMismatch(InputError):
    """A vector or point does not match the expected dimension."""


class NoExactConstant(InputError):
    """No exact constant is catalogued for the requested cone/norm pair."""


class ConfigError(RoughconeError, ValueError):
    """A run configuration is malformed or out of range."""
