"""Exception types raised by the library.

Every domain error carries the name the CLI reports, so ``type(err).__name__``
is what shows up in JSON error payloads.
"""


class ParabolicMomentError(ValueError):
    """Base class for all domain errors."""


class BadComposition(ParabolicMomentError):
    pass


class TooManyBlocks(ParabolicMomentError):
    pass


class OutOfRange(ParabolicMomentError):
    pass


class NotInP(ParabolicMomentError):
    """A matrix has a nonzero entry outside the region it must live in."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class NotInvertible(ParabolicMomentError):
    pass


class IrrationalEigenvalue(ParabolicMomentError):
    pass


class NotRankOne(ParabolicMomentError):
    pass


class DegenerateSpectrum(ParabolicMomentError):
    pass


class NotDefective(ParabolicMomentError):
    pass


class PostconditionFailed(AssertionError):
    """A constructor produced a point that fails its defining equation."""
