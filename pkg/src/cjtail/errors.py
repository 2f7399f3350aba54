"""Exception types shared across the package."""


class CJTailError(Exception):
    """Base class for all errors raised by cjtail."""


class DegreeError(CJTailError, ValueError):
    pass


class OrderError(CJTailError, ValueError):
    """A truncated series does not carry enough coefficients."""


class PDSyntaxError(CJTailError, ValueError):
    pass


class PDArityError(PDSyntaxError):
    pass


class PDEdgeCountError(CJTailError, ValueError):
    """An edge label does not occur exactly twice."""


class PDComponentError(CJTailError, ValueError):
    """The strands do not close up into consistently oriented components."""


class AdequacyError(CJTailError, ValueError):
    """A precondition requiring an adequate diagram failed."""


class MoveError(CJTailError, ValueError):
    """An illegal local move on a smoothing diagram."""


class RealizabilityError(CJTailError, ValueError):
    """A smoothing or skein diagram cannot be embedded in the plane."""


class ResourceError(CJTailError, RuntimeError):
    """A computation would exceed the configured size budget."""


class StabilityError(CJTailError, RuntimeError):
    """Consecutive colors disagree where a tail must have stabilized."""

    def __init__(self, message, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second


class SkeinError(CJTailError, ValueError):
    pass
