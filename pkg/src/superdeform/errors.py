"""Exception hierarchy shared by every layer of the engine."""


class SuperdeformError(Exception):
    """Base class for all engine errors."""


class PoleAtCompositionPoint(SuperdeformError):
    pass


class VariableMismatch(SuperdeformError):
    pass


class ChartMismatch(SuperdeformError):
    pass


class ParityError(SuperdeformError):
    """A superfield was given monomials of the wrong Grassmann parity."""


class NonNilpotentShift(SuperdeformError):
    pass


class NonInvertibleBody(SuperdeformError):
    pass


class VanishingZeta(SuperdeformError):
    pass


class NonTerminatingRuleSet(SuperdeformError):
    pass


class UnknownSuite(SuperdeformError):
    pass


class DegreeOverflow(SuperdeformError):
    pass


class NotACocycle(SuperdeformError):
    pass


class NotInModelRing(SuperdeformError):
    """A cochain component is not a Laurent polynomial in the model coordinate."""


class NotSuperconformal(SuperdeformError):
    pass


class SpinRelationViolated(SuperdeformError):
    pass


class BracketObstruction(SuperdeformError):
    pass


class UnsupportedOrder(SuperdeformError):
    pass


class UnsupportedCover(SuperdeformError):
    pass


class ObstructionNonzero(SuperdeformError):
    """Raised by the splitting solver; ``witness`` holds the failing classification."""

    def __init__(self, message, witness=None, component=None):
        super().__init__(message)
        self.witness = witness
        self.component = component


class ExpressionSyntaxError(SyntaxError, SuperdeformError):
    def __init__(self, message, position=None, source=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position
        self.source = source


class DivisionByZeroExpression(SuperdeformError, ZeroDivisionError):
    pass


class AtlasFormatError(SuperdeformError):
    pass
