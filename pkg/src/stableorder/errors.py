"""Exception hierarchy shared by all modules."""


class StableOrderError(Exception):
    """Base class for every error raised by the package."""


class ComplexError(StableOrderError):
    def __init__(self, message, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class MissingFace(ComplexError):
    pass


class OrderConflict(ComplexError):
    pass


class DuplicateSimplex(ComplexError):
    pass


class SimplexNotInL(ComplexError):
    pass


class NotAMorphism(ComplexError):
    def __init__(self, message, simplex=None, reason=None):
        super().__init__(message, simplex)
        self.reason = reason


class DomainMismatch(StableOrderError):
    pass


class IndexOutOfRange(StableOrderError):
    pass


class NotPointed(StableOrderError):
    pass


class ShapeMismatch(StableOrderError):
    pass


class NotFree(StableOrderError):
    pass


class NotConnectedEnough(StableOrderError):
    def __init__(self, message, dim=None):
        super().__init__(message)
        self.dim = dim


class UnknownGenerator(StableOrderError):
    pass


class TargetNotFree(StableOrderError):
    pass


class NotAdditive(StableOrderError):
    pass


class DegreeTooLow(StableOrderError):
    pass


class G0NotTrivial(StableOrderError):
    pass


class SmallnessFailure(StableOrderError):
    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z


class EdgeEscapesB(StableOrderError):
    pass


class SeparationFailure(StableOrderError):
    pass


class LiftFailure(StableOrderError):
    pass


class QueryTooLarge(StableOrderError):
    pass


class TargetNotAbelian(StableOrderError):
    pass


class ModelTooLarge(StableOrderError):
    pass


class ParseError(StableOrderError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class BudgetExceeded(StableOrderError):
    pass
