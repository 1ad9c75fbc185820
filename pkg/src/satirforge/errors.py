"""Exception types shared across the package."""


class SatirforgeError(Exception):
    """Base class for all errors raised by this package."""


class MalformedCounts(SatirforgeError):
    """A run-length counts payload could not be decoded."""


class SchemaError(SatirforgeError):
    """An input document is missing required fields or has the wrong shape."""


class DimensionMismatch(SatirforgeError):
    """Two grids (or a grid and its declared size) disagree on dimensions."""


class TooManyCategories(SatirforgeError):
    """A compose configuration asks for more category ids than fit in 8 bits."""


class LabelOutOfRange(SatirforgeError):
    """A label map contains a value outside [0, num_classes) that is not the ignore id."""


class EmptyEvaluation(SatirforgeError):
    """No non-ignored pixels (or no image pairs) were available to evaluate."""


class EmptyForeground(SatirforgeError):
    """A distance transform was requested for a mask with no foreground pixels."""


class BadFractions(SatirforgeError):
    """Split fractions must be positive and sum to at most 1."""
