"""Exception hierarchy shared by all modules."""


class CritArrowError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class DimensionMismatch(CritArrowError, ValueError):
    pass


class SingularMatrix(CritArrowError, ValueError):
    pass


class ZeroVector(CritArrowError, ValueError):
    pass


class NotInCone(CritArrowError, ValueError):
    pass


class NotALatticePoint(CritArrowError, ValueError):
    pass


class IndexNotInMinimalFace(CritArrowError, ValueError):
    pass


class NotACritVector(CritArrowError, ValueError):
    pass


class NonInteriorW(CritArrowError, ValueError):
    pass


class UnboundedRegion(CritArrowError, ValueError):
    pass


class BadParameters(CritArrowError, ValueError):
    pass


class InternalInconsistency(CritArrowError, AssertionError):
    """Two independent routes to the same object disagreed."""


class ResourceLimit(Exception):
    """An enumeration would exceed the configured cap (CLI exit code 3)."""
