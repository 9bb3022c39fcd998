"""Exception hierarchy shared by the whole package.

Two families matter for the CLI exit-code contract:

* ``PreconditionError`` - the caller handed us an input that violates a
  documented precondition (exit code 2).
* ``InternalInvariantError`` - an invariant the library itself guarantees
  failed; always a bug-report trigger (exit code 3).
"""


class HklError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(HklError):
    """A documented precondition was violated by the caller."""


class InternalInvariantError(HklError):
    """An internal invariant failed; indicates a bug, not bad input."""


# -- precondition violations -------------------------------------------------

class NullInput(PreconditionError):
    """The zero polynomial / zero function where a non-null one is required."""


class NotNonnegative(PreconditionError):
    """A boundary function that must be nonnegative takes negative values."""


class OddCircleMultiplicity(PreconditionError):
    """A unit-circle zero of odd multiplicity: the function changes sign."""


class PoleHit(PreconditionError):
    """Blaschke-product evaluation at (or too close to) a pole."""


class NotDivisible(PreconditionError):
    """The Blaschke denominator does not divide the polynomial factor."""


class NotInV(PreconditionError):
    """The function is not a member of the modulus body for this order."""


class AlreadyExtreme(PreconditionError):
    """Midpoint split requested for an extreme point."""


class NotOnBoundary(PreconditionError):
    """Norm is not 1: the function is not on the boundary of the body."""


class NotUnitNorm(PreconditionError):
    """A unit-norm kernel element was required."""


class BandExceeded(PreconditionError):
    """Frequency content outside the admissible band for this order."""


class InnerFactorPresent(PreconditionError):
    """The lifted function has a nontrivial inner factor where it must be outer."""


class NotNormalized(PreconditionError):
    """Mean value must equal 1 for this operation."""


class TooSmall(PreconditionError):
    """A sampled modulus dips below the numeric floor for the log/exp path."""


# -- internal failures --------------------------------------------------------

class NonConvergence(InternalInvariantError):
    """Root iteration failed to reach tolerance within the iteration budget."""


class PairingFailure(InternalInvariantError):
    """Zeros of a lifted nonnegative function failed to pair across the circle."""
