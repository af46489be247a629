"""Exception hierarchy shared by the engine and the command line."""


class AdiabaticError(Exception):
    """Base class for every error raised by this package."""


class InvalidRing(AdiabaticError):
    pass


class RingMismatch(AdiabaticError):
    pass


class NonDivisorTwist(AdiabaticError):
    pass


class UnsupportedDimension(AdiabaticError):
    pass


class RankMismatch(AdiabaticError):
    pass


class DegenerateVolume(AdiabaticError):
    pass


class UnsupportedRank(AdiabaticError):
    pass


class UnsupportedOrder(AdiabaticError):
    pass


class NonDecreasingWeights(AdiabaticError):
    pass


class InvalidInput(AdiabaticError):
    """Raised when a test configuration input violates its invariants."""


class SchemaError(AdiabaticError):
    """Problem document has the wrong shape.

    ``violations`` is a list of ``(field_path, message)`` pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in self.violations))


class SemanticError(SchemaError):
    """Problem document is well formed but mathematically inconsistent."""
