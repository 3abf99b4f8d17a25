"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Array or series dimensions are inconsistent with the requested operation."""


class DataFormatError(ValueError):
    """An input file (CSV, config) is malformed or violates the expected schema."""


class ConfigError(ValueError):
    """A configuration object combines options in an unsupported way."""


class NumericalError(RuntimeError):
    """A linear system was numerically singular or an iteration failed to converge."""
