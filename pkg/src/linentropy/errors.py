"""Exception hierarchy.

Every error raised by the library derives from :class:`LinEntropyError` and
from :class:`ValueError`, so callers can catch either.
"""


class LinEntropyError(ValueError):
    pass


# distributions
class EmptyAlphabet(LinEntropyError):
    pass


class NegativeMass(LinEntropyError):
    pass


class NotNormalized(LinEntropyError):
    pass


class DuplicateLabel(LinEntropyError):
    pass


class ShapeMismatch(LinEntropyError):
    """Labels and masses disagree in length (or a joint matrix is not square)."""


class EmptyInput(LinEntropyError):
    pass


class AllZeroCounts(LinEntropyError):
    pass


class ZeroSize(LinEntropyError):
    pass


class InvalidWeights(LinEntropyError):
    pass


# divergences
class LabelMismatch(LinEntropyError):
    pass


class AbsoluteContinuityViolated(LinEntropyError):
    pass


class SingletonAlphabet(LinEntropyError):
    pass


# lin
class OutOfRange(LinEntropyError):
    pass


class ZeroProbability(OutOfRange):
    """Probability zero where a derivative diverges."""


# verification / cli
class UnknownProperty(LinEntropyError):
    pass


class InvalidConfig(LinEntropyError):
    pass


class InvalidSpec(LinEntropyError):
    pass


class ParseError(LinEntropyError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
