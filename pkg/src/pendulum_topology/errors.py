"""Exception and warning types shared across the package."""


class PendulumTopologyError(Exception):
    pass


class DegenerateSlope(PendulumTopologyError):
    """Raised when k == 1 makes V(P2) == V(P3) and a regime split is requested."""


class DegenerateSlopeWarning(UserWarning):
    pass


class NotApplicable(PendulumTopologyError):
    pass


class ConstraintViolation(PendulumTopologyError):
    pass


class InvalidComplex(PendulumTopologyError):
    """Boundary maps do not compose to zero."""


class NotASubcomplex(PendulumTopologyError):
    pass


class ComplexTooLarge(PendulumTopologyError):
    pass


class TorsionPresent(PendulumTopologyError):
    pass


class DimensionMismatch(PendulumTopologyError):
    pass


class NotClosedConnected(PendulumTopologyError):
    pass


class Inconsistent(PendulumTopologyError):
    """Known dimensions contradict exactness."""


class Underdetermined(PendulumTopologyError):
    def __init__(self, message, labels=()):
        super().__init__(message)
        self.labels = tuple(labels)


class ZeroEulerWarning(UserWarning):
    pass


class LevelTooCloseToVertex(PendulumTopologyError):
    pass


class NonMorseLevel(PendulumTopologyError):
    pass


class BadDimension(PendulumTopologyError):
    pass


class ProjectionDivergence(PendulumTopologyError):
    pass


class EmptyRegime(PendulumTopologyError):
    pass
