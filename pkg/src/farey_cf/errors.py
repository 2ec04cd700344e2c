"""Exception hierarchy shared by every module of the package."""


class FareyCFError(Exception):
    """Base class for all errors raised by farey_cf."""


class ZeroOverZero(FareyCFError, ValueError):
    pass


class ZeroDenominator(FareyCFError, ZeroDivisionError):
    pass


class NotInvertible(FareyCFError, ValueError):
    pass


class InsufficientPrecision(FareyCFError):
    """An interval input cannot decide a floor, sign or comparison."""


class ParseError(FareyCFError, ValueError):
    pass


class NotAVertex(FareyCFError, ValueError):
    pass


class NotAdjacent(FareyCFError, ValueError):
    pass


class InX(FareyCFError, ValueError):
    """Raised by operations that only make sense outside the vertex set."""


class NotInX(FareyCFError, ValueError):
    """Raised by operations that only make sense on the vertex set."""


class CountExceedsLength(FareyCFError, IndexError):
    pass


class SignMismatch(FareyCFError, ValueError):
    pass


class NotWellDirected(FareyCFError, ValueError):
    pass


class NonIntegral(FareyCFError, ValueError):
    pass


class EmptyAfterFilter(FareyCFError, RuntimeError):
    pass
