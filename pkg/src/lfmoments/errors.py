"""Exception types shared across the toolkit.

Every domain failure raises one of these instead of a bare ValueError so the
command-line layer can map them to structured error records.
"""


class LfmomentsError(Exception):
    """Base class for all toolkit-specific failures."""


class DomainError(LfmomentsError):
    """An argument is outside the mathematical domain of the operation."""


class PreconditionError(LfmomentsError):
    """A documented calling precondition was violated."""


class IntegralityViolation(LfmomentsError):
    """An exact division that must come out integral left a remainder."""


class UnsupportedClass(LfmomentsError):
    """The requested symmetry class (or prime) is not covered by this formula."""


class OutOfRegime(LfmomentsError):
    """The prime is outside the regime where the zero-valuation test applies."""


class PoleError(LfmomentsError):
    """Evaluation was requested at (or numerically too close to) a pole."""


class NoConvergence(LfmomentsError):
    """An iterative scheme failed to reach the requested accuracy."""


class ConstraintError(LfmomentsError):
    """Polynomial inputs violate a structural constraint (parity, nonzero...)."""


class DivergentInner(LfmomentsError):
    """An inner local sum failed to converge within the iteration budget."""
