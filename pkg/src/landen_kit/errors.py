"""Exception hierarchy shared by every module."""


class LandenKitError(Exception):
    """Base class for all errors raised by landen_kit."""


class DomainError(LandenKitError, ValueError):
    """Parameter or argument outside the domain where a quantity is finite."""


class PoleError(LandenKitError, ArithmeticError):
    """Evaluation point sits within the pole guard of a pole (or of a zero of a denominator)."""


class ParityError(LandenKitError, ValueError):
    """Formula requested for an order p of the wrong parity."""


class UnsupportedOrder(LandenKitError, ValueError):
    pass


class ApplicabilityError(LandenKitError, ValueError):
    """Identity requested for a (p, r) combination it does not cover."""


class RangeError(LandenKitError, ValueError):
    pass


class DenominatorError(LandenKitError, ArithmeticError):
    pass


class NonConservation(LandenKitError, ArithmeticError):
    """A quantity that should be a first integral varies along the sample set."""


class BranchError(LandenKitError, ArithmeticError):
    pass
