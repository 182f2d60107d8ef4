"""Exception hierarchy shared by all unideriv modules."""


class UniderivError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(UniderivError):
    pass


class DegenerateInputError(UniderivError):
    """Numerically rank-deficient input; caller should resample upstream."""


class ConvergenceError(UniderivError):
    """An iteration failed to converge within its budget.

    Carries the best iterate found so far in ``best`` when available.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class PrecisionError(UniderivError):
    """Working precision was insufficient for the requested computation."""


class DegenerateSpectrumError(UniderivError):
    """Two eigenangles coincide to within the dedup tolerance."""


class BracketError(UniderivError):
    """Root bracketing endpoints do not straddle a sign change."""


class ConstructionError(UniderivError):
    """An exact algebraic construction left a nonzero remainder."""


class DataError(UniderivError):
    """Too little or no data for the requested statistic."""


class SampleRangeError(UniderivError):
    """Samples fell outside the requested histogram range."""

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class ReportParseError(UniderivError):
    """A report file is malformed or truncated."""


class SchemaVersionError(ReportParseError):
    """A report file carries an unsupported schema version."""
