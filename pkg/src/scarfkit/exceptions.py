"""Exception hierarchy shared by every module."""


class ScarfError(Exception):
    """Base class for all errors raised by scarfkit."""


class InvalidInstance(ScarfError, ValueError):
    """Input violates a structural precondition."""


class EmptyInstance(InvalidInstance):
    pass


class NotCliqueAcyclic(InvalidInstance):
    pass


class CliqueTooLarge(InvalidInstance):
    pass


class CapExceeded(InvalidInstance):
    """A brute-force or enumeration routine was asked for more than its cap."""


class EnumerationCap(CapExceeded):
    pass


class UnboundedDirection(InvalidInstance):
    """Entering column has no positive coordinate: {alpha >= 0 : B alpha = b} is unbounded."""


class InternalAssertion(ScarfError, RuntimeError):
    """A property guaranteed by theory failed at runtime; indicates a bug."""


class LemmaViolation(InternalAssertion):
    pass


class StepLimitExceeded(InternalAssertion):
    pass


class Unrepairable(InternalAssertion):
    pass


class IterationCap(InternalAssertion):
    pass
