"""Exception hierarchy shared by all modules.

Every error belongs to one of four families, which the command line
interface maps to distinct exit codes: parse errors (2), precondition
violations (3), hypothesis failures (4) and falsification events (5).
A falsification event means an exact computation contradicted a fact
the library is entitled to assume; it should never happen and is
reported loudly instead of being swallowed.
"""


class LefkitError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParseError(LefkitError):
    """Malformed textual or JSON input."""

    exit_code = 2


class PreconditionError(LefkitError):
    """A documented precondition of an operation was violated."""

    exit_code = 3


class HypothesisError(LefkitError):
    """Input fails a mathematical hypothesis of the requested construction."""

    exit_code = 4


class FalsificationError(LefkitError):
    """An exact computation contradicted an invariant assumed to hold."""

    exit_code = 5


class InvalidComplex(PreconditionError):
    pass


class DimensionError(PreconditionError):
    pass


class NotAFace(PreconditionError):
    pass


class PurityError(PreconditionError):
    pass


class NotIncidenceLike(PreconditionError):
    """Pairwise facet intersections exceed one vertex."""


class InvalidModulus(PreconditionError):
    pass


class MonomialError(PreconditionError):
    pass


class EquigenerationError(PreconditionError):
    pass


class HomogeneityError(PreconditionError):
    pass


class NotArtinian(PreconditionError):
    pass


class ColoringError(PreconditionError):
    pass


class ArityError(PreconditionError):
    """Wrong number of forms for a system of parameters."""


class RangeError(PreconditionError):
    pass


class InputError(PreconditionError):
    pass
