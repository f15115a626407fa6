"""Exception types raised across the package."""


class FloerCurvesError(Exception):
    """Base class for every error raised by this package."""


class InvalidSemigroup(FloerCurvesError, ValueError):
    pass


class AlternationFailure(FloerCurvesError, ValueError):
    """The Alexander polynomial of a semigroup does not alternate in ±1."""


class MultiStaircaseUnsupported(FloerCurvesError, ValueError):
    pass


class InvalidComplex(FloerCurvesError, ValueError):
    """A complex fails its grading or ∂²=0 checks."""


class ActionNotChainMap(InvalidComplex):
    pass


class HalfIntegerLevel(FloerCurvesError, ValueError):
    pass


class NoTower(FloerCurvesError, ArithmeticError):
    """Homology has no free summand in the requested part."""


class CapExceeded(FloerCurvesError, RuntimeError):
    pass


class NotSplitTowers(FloerCurvesError, ValueError):
    pass


class UnsupportedMixedCase(FloerCurvesError, NotImplementedError):
    """A negative surplus meets several cusps; no closed formula is known."""


class ConfigMismatch(FloerCurvesError, ValueError):
    pass


class GenusFormulaViolation(ConfigMismatch):
    pass


class NonpositiveM(FloerCurvesError, ValueError):
    pass
