"""Exception hierarchy shared by every module of the package."""


class GaleRobinsonError(Exception):
    """Base class for all errors raised by galerob."""


class InvalidParams(GaleRobinsonError, ValueError):
    pass


class InternalError(GaleRobinsonError, RuntimeError):
    """A construction that is provably total got stuck: this is a bug."""


class NoPath(GaleRobinsonError, ValueError):
    pass


class NonPlanarSquare(GaleRobinsonError):
    pass


class NonOrientedFace(GaleRobinsonError):
    pass


class VertexInTwoCycle(GaleRobinsonError, ValueError):
    pass


class ArityMismatch(GaleRobinsonError, ValueError):
    pass


class NotDivisible(GaleRobinsonError, ArithmeticError):
    pass


class NotMonomial(GaleRobinsonError, ArithmeticError):
    pass


class OutOfBand(GaleRobinsonError, ValueError):
    pass


class NotInSet(GaleRobinsonError, KeyError):
    pass


class InvalidDegreeSet(GaleRobinsonError, ValueError):
    pass


class InfiniteSet(GaleRobinsonError):
    pass


class TooLarge(GaleRobinsonError, ValueError):
    pass


class ThetaError(GaleRobinsonError):
    """A precondition of the mutation operator failed.

    ``predicate`` names the failed check and ``witness`` carries the offending
    weight (or triple of weights), so callers can print something actionable.
    """

    predicate = "theta"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSturdy(ThetaError):
    predicate = "NotSturdy"


class NotIntervalClosed(ThetaError):
    predicate = "NotIntervalClosed"


class NotConnected(ThetaError):
    predicate = "NotConnected"


class TwoCycleAtVertexOne(ThetaError):
    predicate = "TwoCycleAtVertexOne"


class ThetaUndefined(ThetaError):
    predicate = "ThetaUndefined"


class OutputNotCalibrated(ThetaError):
    predicate = "OutputNotCalibrated"


class ActionIllDefined(GaleRobinsonError):
    """Two paths of equal weight act differently on a basis vector."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
