"""Exception types shared by every module of the package."""


class HeckeError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(HeckeError, ZeroDivisionError):
    pass


class ModeMismatch(HeckeError):
    """Two operands were built over different parameter modes."""


class PoleAtSpecialization(HeckeError, ZeroDivisionError):
    """A denominator vanishes at the requested parameter values."""


class RankMismatch(HeckeError):
    pass


class IndexOutOfRange(HeckeError, IndexError):
    pass


class NotSemisimple(HeckeError):
    """The requested construction needs a semisimple specialization."""


class ShapeMismatch(HeckeError):
    pass


class SizeMismatch(HeckeError):
    pass


class HypothesisViolated(HeckeError):
    pass


class CoefficientMismatch(HeckeError):
    pass
