"""Exception hierarchy for trinedisc."""


class TrineError(Exception):
    """Base class for all trinedisc errors."""


class DomainError(TrineError, ValueError):
    """Input outside the mathematically admissible domain."""


class DegenerateError(TrineError):
    """Construction requested for a fully degenerate prior configuration."""


class PureStateError(TrineError):
    """The ensemble density matrix is pure, so its inverse is undefined."""


class ZeroPriorError(TrineError, ZeroDivisionError):
    """A formula requiring strictly positive priors received a zero prior."""


class RegionError(TrineError):
    """Three-outcome construction requested outside its validity region."""


class RankError(TrineError):
    """An operator expected to be numerically rank-1 is not."""


class VerificationError(TrineError):
    """Two redundant internal computations of the same quantity disagree."""


class ZeroOutcomeError(TrineError):
    """Bayes confidence requested for an outcome with vanishing probability."""


class UndefinedError(TrineError):
    """Closed-form confidence is undefined for this prior configuration."""


class InsufficientDataError(TrineError):
    """Too few Monte Carlo shots landed on the requested outcome."""
