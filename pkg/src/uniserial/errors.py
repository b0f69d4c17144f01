"""Exception types shared across the package."""


class UniserialError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(UniserialError):
    pass


class ElementNotInGroup(UniserialError):
    pass


class NotSubgroup(UniserialError):
    pass


class NotNormal(UniserialError):
    pass


class CapExceeded(UniserialError):
    """A configured order/degree/index/enumeration cap would be exceeded."""


class IndexCapExceeded(CapExceeded):
    pass


class NotUniserial(UniserialError):
    pass


class NotUniqueMinimalNormal(UniserialError):
    pass


class QuotientNotGenerated(UniserialError):
    """The quotient cannot be generated by the requested tuple length."""


class UnrecognizedSimpleType(UniserialError):
    """Simple factor order lies beyond the built-in identification table."""

    def __init__(self, message, order=None, width=None):
        super().__init__(message)
        self.order = order
        self.width = width


class UnnormalizedDescriptor(UniserialError):
    pass


class UnknownSporadic(UniserialError):
    pass


class OutsideTable(UniserialError):
    pass


class NotTransitive(UniserialError):
    pass


class NotUniserialModule(UniserialError):
    pass


class SingularMatrix(UniserialError):
    pass


class NoSuchPrime(UniserialError):
    pass


class SearchFailed(UniserialError):
    pass


class BadCenter(UniserialError):
    pass


class CaseInconsistency(UniserialError):
    """The projection trichotomy failed; indicates a bug, not bad input."""
