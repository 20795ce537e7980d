"""Exception types shared across the package."""


class BidibeamError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(BidibeamError, ValueError):
    """An argument violates a documented precondition."""


class FormatError(BidibeamError, ValueError):
    """A file could not be parsed; the message names the offending line."""


class DirectionError(BidibeamError, ValueError):
    """A model of the wrong direction (regular vs reverse) was supplied."""


class VocabularyMismatchError(BidibeamError, ValueError):
    """Token ids or vocabulary sizes do not match between components."""


class DegeneratePairError(BidibeamError):
    """A sentence pair became empty after filtering and cannot be compared."""


class ConfigError(BidibeamError, ValueError):
    """A run configuration is invalid or incomplete."""
