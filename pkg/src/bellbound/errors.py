"""Exception types shared across the package.

Plain argument mistakes (bad site index, shape mismatch, out-of-range
parameters) raise the builtin ``ValueError``; the classes here mark failure
modes a caller may want to branch on.
"""


class BellboundError(Exception):
    """Base class for package-specific errors."""


class ValidationError(BellboundError):
    """Input data violates a structural invariant (norm, hermiticity, POVM)."""


class CapacityError(BellboundError):
    """Requested construction exceeds a configured size or enumeration guard."""


class DegeneracyError(BellboundError):
    """The construction is degenerate for the given inputs."""


class UnsupportedFunctionalError(BellboundError):
    """The functional's outcome structure is outside this operation's scope."""
