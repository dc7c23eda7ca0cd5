"""Exception hierarchy.

Every precondition violation raises a subclass of :class:`MR6VError`; the CLI
prints the class name on stderr so scripts can match on it.
"""


class MR6VError(ValueError):
    """Base class for all library errors."""


class NonSquare(MR6VError):
    pass


class Singular(MR6VError):
    pass


class ZeroCrossing(MR6VError):
    """The crossing constant c vanished."""


class TraceZero(MR6VError):
    pass


class DistinctnessViolation(MR6VError):
    pass


class PoleHit(MR6VError):
    """A g, h or phi denominator vanished."""


class NotSquare(MR6VError):
    """A square-lattice-only formula was asked for n != m."""


class BetaOne(MR6VError):
    pass


class BadK(MR6VError):
    pass


class DegreeViolation(MR6VError):
    pass


class DomainViolation(MR6VError):
    pass


class NonPositiveTrace(MR6VError):
    pass


class ParseError(MR6VError):
    pass


class LatticeTooLarge(MR6VError):
    """Oracle lattice height above the configured cap."""


class EmptyGrid(MR6VError):
    """No curve point of the requested grid lies in the free-energy domain."""
