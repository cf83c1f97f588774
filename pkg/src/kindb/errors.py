"""Exception hierarchy for the package.

Everything raised on purpose derives from :class:`KindbError`, so callers
(and the CLI) can distinguish bad input from genuine bugs.
"""


class KindbError(Exception):
    """Base class for all errors raised by kindb."""


# -- monoid layer ------------------------------------------------------------

class ElementError(KindbError):
    """A value is not an element of the monoid's carrier."""


class InvalidMonoidTable(KindbError):
    """A finite operation table violates a monoid axiom; the message names
    the failing instance."""


class UnsupportedMonoid(KindbError):
    """The requested operation is undefined for this monoid."""


class NotSubtractable(KindbError):
    """monus(a, b) requested with b not below a in the natural order."""


# -- database layer ----------------------------------------------------------

class SchemaMismatch(KindbError):
    pass


class MonoidMismatch(KindbError):
    pass


class UnknownRelation(KindbError):
    pass


class UnknownAttribute(KindbError):
    pass


class StarConstantError(KindbError):
    """The reserved star constant appeared in user input."""


# -- dependency / inference layer --------------------------------------------

class ParseError(KindbError):
    pass


class DuplicateAttribute(KindbError):
    pass


class ArityMismatch(KindbError):
    pass


class IndexOutOfRange(KindbError):
    pass


class DuplicateIndex(KindbError):
    pass


class MiddleMismatch(KindbError):
    """Transitivity premises whose shared relation/attribute sequence differ."""


class PremiseMismatch(KindbError):
    """Weak-symmetry premises that do not line up."""


class ProofError(KindbError):
    """A derivation tree failed re-validation."""


# -- chase / entailment layer ------------------------------------------------

class UnclassifiedMonoid(KindbError):
    pass


class ChaseBudgetExceeded(KindbError):
    """The additive chase hit its step limit in a context where termination
    is guaranteed; this signals an internal defect, not bad input."""


class NoCountermodel(KindbError):
    """A countermodel was requested for a derivable dependency."""


class InvalidChain(KindbError):
    pass


class InvalidPair(KindbError):
    pass


class NotEventuallyPeriodic(KindbError):
    pass


class DominanceFailure(KindbError):
    pass


class CountermodelError(KindbError):
    """A construction produced a database that failed verification."""


class SearchSpaceTooLarge(KindbError):
    pass
