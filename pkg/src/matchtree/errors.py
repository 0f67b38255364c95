"""Exception types raised across the package."""


class MatchTreeError(Exception):
    """Base class for all errors raised by matchtree."""


class InvalidParameter(MatchTreeError, ValueError):
    pass


class UnsupportedPattern(MatchTreeError, ValueError):
    pass


class TooLarge(MatchTreeError):
    """An exact search or enumeration would exceed its hard size cap."""


class NotAForest(MatchTreeError, ValueError):
    pass


class InvalidFace(MatchTreeError, ValueError):
    pass


class InvalidPivot(MatchTreeError, ValueError):
    pass


class InternalInvariantViolation(MatchTreeError):
    """A matching-tree node failed validation; indicates a bug or a bad strategy."""


class StrategyIncomplete(MatchTreeError):
    pass


class BudgetExceeded(MatchTreeError):
    pass


class HypothesisNotMet(MatchTreeError, ValueError):
    pass


class CertificateUnavailable(MatchTreeError):
    """A reduction needs a contractibility certificate that was not supplied or did not check."""
