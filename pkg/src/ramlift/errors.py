"""Exception hierarchy shared by all ramlift modules."""


class RamliftError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(RamliftError):
    pass


class Reducible(RamliftError):
    pass


class DivisionByZero(RamliftError):
    pass


class FieldMismatch(RamliftError):
    pass


class CharMismatch(RamliftError):
    pass


class RingMismatch(RamliftError):
    pass


class NotAUnit(RamliftError):
    pass


class NotEisenstein(RamliftError):
    pass


class InsufficientPrecision(RamliftError):
    pass


class PrecisionTooLow(RamliftError):
    pass


class TooLarge(RamliftError):
    pass


class PreconditionBound(RamliftError):
    """Lifting requested below the precision threshold that guarantees uniqueness."""


class NoRoot(RamliftError):
    """Internal inconsistency: a guaranteed root was not found."""


class MultipleRoots(RamliftError):
    """Internal inconsistency: the selection rule matched more than one root."""


class NotComposable(RamliftError):
    pass


class IncompatibleLengths(RamliftError):
    pass
