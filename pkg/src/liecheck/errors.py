class LiecheckError(Exception):
    """Base class for toolkit errors."""


class InvalidTypeError(LiecheckError):
    """Raised for (family, rank) pairs that do not name a simple type."""


class DomainError(LiecheckError):
    """Raised when an operation's precondition is violated."""


class VerificationError(LiecheckError):
    """Raised when two independent computations of the same fact disagree."""


class BudgetExceededError(LiecheckError):
    """Raised when an enumeration exceeds its configured size gate."""
