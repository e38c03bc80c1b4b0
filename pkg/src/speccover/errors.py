"""Exception types shared across the library.

Every contract violation raises one of these instead of a bare ValueError,
so callers (and the CLI) can tell a usage error from a failed certification.
"""


class SpeccoverError(Exception):
    pass


class DuplicateGenerator(SpeccoverError):
    pass


class BadCharacteristic(SpeccoverError):
    pass


class RingMismatch(SpeccoverError):
    pass


class DivisionByZeroPoly(SpeccoverError):
    pass


class NotMonic(SpeccoverError):
    pass


class NotMonogenic(SpeccoverError):
    pass


class AssociativityFailure(SpeccoverError):
    pass


class NotFree(SpeccoverError):
    pass


class CertificationFailure(SpeccoverError):
    """A value that must lie in the base polynomial ring failed exact division."""


class SolutionSpaceDimensionMismatch(SpeccoverError):
    pass


class InconsistentPin(SpeccoverError):
    pass


class CharTooSmall(SpeccoverError):
    pass


class IncompatiblePair(SpeccoverError):
    pass


class InsufficientPrecision(SpeccoverError):
    """A truncated Laurent computation cannot decide the requested predicate."""
