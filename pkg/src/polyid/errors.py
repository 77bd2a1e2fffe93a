"""Exception types raised across the package."""


class PolyidError(Exception):
    """Base class for all package errors."""


class EmptyInput(PolyidError):
    pass


class Disconnected(PolyidError):
    def __init__(self, first, second):
        super().__init__(f"cells {tuple(first)} and {tuple(second)} are not connected")
        self.cells = (first, second)


class NotConvex(PolyidError):
    pass


class BoundaryTouch(PolyidError):
    """The removed shape shares boundary vertices with the ambient rectangle."""


class OutOfScope(PolyidError):
    pass


class NotDivisible(PolyidError):
    pass


class ExponentOverflow(PolyidError):
    pass


class ResourceLimit(PolyidError):
    """The Groebner step budget was exhausted."""


class NotAnInnerInterval(PolyidError):
    pass


class VerticesNotInSupport(PolyidError):
    pass


class DegreeTooLow(PolyidError):
    pass


class RaggedGrid(PolyidError):
    pass


class InconsistentQ(PolyidError):
    pass


class InfeasibleDims(PolyidError):
    pass


class IoFailure(PolyidError, OSError):
    pass
