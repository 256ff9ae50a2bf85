"""Exception hierarchy.

Domain errors (bad parameters, z outside the supported region) derive from
:class:`DomainError`; numerical failures derive from :class:`NumericalFailure`.
"""


class Hyp43Error(Exception):
    """Base class for every error raised by this package."""


class DomainError(Hyp43Error, ValueError):
    """Input lies outside the region where the requested method is defined."""


class InvalidParameter(DomainError):
    pass


class PoleArgument(DomainError):
    """A gamma/polygamma argument sits on a pole (non-positive integer)."""


class NumeratorPole(PoleArgument):
    pass


class OutsideDomain(DomainError):
    pass


class DegenerateLowerParameter(DomainError):
    """Some lower parameter differs from a clustered upper parameter by an integer."""


class IntegerDifference(DomainError):
    """Two upper parameters differ by an integer, so the poles are not simple."""


class UnsupportedPattern(Hyp43Error):
    """Integer-gap structure among the upper parameters has no expansion here."""


class NumericalFailure(Hyp43Error):
    pass


class NotConverged(NumericalFailure):
    """Series or quadrature hit its budget before meeting the tolerance.

    ``partial`` carries the truncated :class:`~hyp43.results.EvalResult` when one
    is available, so callers can still inspect what was summed.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CancellationLoss(NumericalFailure):
    pass


class ContourFailure(NumericalFailure):
    pass
