class CrossnumError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(CrossnumError, ValueError):
    """Point set with a duplicate point or a collinear triple."""


class FormatError(CrossnumError, ValueError):
    """Malformed or truncated input file."""


class LabelingError(CrossnumError, ValueError):
    """A block labeling that does not fit the half-period it is applied to."""
