class CensusError(Exception):
    """Base class for every error raised by the census library."""


class InvalidInputError(CensusError, ValueError):
    pass


class DeferredCaseError(CensusError, ValueError):
    """A term at a ramified small prime that has no closed form here."""

    def __init__(self, message: str = "deferred to sequel"):
        super().__init__(message)


class EnumerationError(CensusError, RuntimeError):
    pass


class EnumerationBoundError(EnumerationError):
    pass


class MassMismatchError(EnumerationError):
    pass


class UnexpectedUnitGroupError(EnumerationError):
    pass


class IntegralityError(CensusError, ArithmeticError):
    pass
