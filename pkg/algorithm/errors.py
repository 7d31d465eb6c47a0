"""Exception types shared across the algorithm package.

Plain precondition failures raise ValueError directly. The subclasses below
exist for the cases a caller (mostly the CLI) has to tell apart.
"""


class ShapeMismatchError(ValueError):
    """Operands disagree in length, modulus or variable count."""


class WorkCapError(ValueError):
    """A configured size cap would be exceeded by the requested computation."""


class VerificationError(AssertionError):
    """An identity or bound that must hold by construction did not hold."""
