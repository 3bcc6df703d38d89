"""Error types shared across the package.

Every public failure mode gets its own class so callers can react precisely;
the CLI maps each class to a stable nonzero exit code (the ``exit_code``
attribute, documented in the README).
"""


class MixentropyError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InvalidConfig(MixentropyError):
    exit_code = 2


# ingest ---------------------------------------------------------------

class FileUnreadable(MixentropyError):
    exit_code = 10


class ParseFailure(MixentropyError):
    exit_code = 11

    def __init__(self, row, message=""):
        self.row = row
        super().__init__(message or f"row {row}: cannot parse price value")


class NonPositivePrice(MixentropyError):
    exit_code = 12

    def __init__(self, row, value=None):
        self.row = row
        self.value = value
        super().__init__(f"row {row}: price must be finite and > 0, got {value!r}")


class TooShort(MixentropyError):
    exit_code = 13


class EmptySet(MixentropyError):
    exit_code = 14


# preprocess -----------------------------------------------------------

class HorizonTooLarge(MixentropyError):
    exit_code = 20


class WindowTooSmall(MixentropyError):
    exit_code = 21


class WindowTooLarge(MixentropyError):
    exit_code = 22


# partition ------------------------------------------------------------

class DegenerateSeries(MixentropyError):
    exit_code = 30


# entropy --------------------------------------------------------------

class EmptyPartition(MixentropyError):
    exit_code = 40


class InsufficientSupport(MixentropyError):
    exit_code = 41


# heterogeneity --------------------------------------------------------

class EmptyCurve(MixentropyError):
    exit_code = 50


class RangeTooNarrow(MixentropyError):
    exit_code = 51


class AllMaximallyHeterogeneous(MixentropyError):
    exit_code = 52


# portfolio ------------------------------------------------------------

class TooFewRows(MixentropyError):
    exit_code = 60


class ZeroVariancePortfolio(MixentropyError):
    exit_code = 61


# synthetic ------------------------------------------------------------

class InvalidHurst(MixentropyError):
    exit_code = 70


class InsufficientScales(MixentropyError):
    exit_code = 71
