"""Exception hierarchy shared by all modules."""


class TropicalError(Exception):
    """Base class for every error raised by tropmorph."""


class ParseError(TropicalError):
    def __init__(self, message: str, context: str | None = None):
        self.context = context
        super().__init__(f"{context}: {message}" if context else message)


class NonInvertibleZero(TropicalError, ZeroDivisionError):
    """Negative tropical power of -inf."""


class IndeterminateSum(TropicalError, ArithmeticError):
    """inf + (-inf) in extended-rational arithmetic."""


class InvalidModel(TropicalError):
    pass


class PointNotOnCurve(TropicalError):
    pass


class CannotSubdivideAtInfinity(TropicalError):
    pass


class InvalidSubset(TropicalError):
    pass


class NotOnInfiniteEdge(TropicalError):
    pass


class CurveMismatch(TropicalError):
    pass


class BottomFunction(TropicalError):
    """Operation undefined for the constant -inf."""


class InvalidFunction(TropicalError):
    pass


class InvalidMorphism(TropicalError):
    pass


class NotSurjectiveWarning(UserWarning):
    pass


class DegenerateResult(TropicalError):
    pass


class OracleLawViolation(TropicalError):
    pass


class FiberInconsistency(TropicalError):
    """Fiber sets are not disjoint, do not cover, or do not assemble into a morphism."""


class EmptyFiber(FiberInconsistency):
    pass


class TrilaterationAmbiguity(FiberInconsistency):
    pass
