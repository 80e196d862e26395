"""Exception types raised by the library.

Everything derives from PPFError (itself a ValueError) so callers can catch
broadly; the leaf classes exist because the contracts of individual
operations name them.
"""


class PPFError(ValueError):
    """Base class for all library errors."""


class NotPrime(PPFError):
    """A prime was required and a composite (or < 2) was given."""


class TooLarge(PPFError):
    """Requested field order exceeds the configured size cap."""


class CtxMismatch(PPFError):
    """Operands belong to different field contexts."""


class DivisionByZero(PPFError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class ZeroElement(PPFError):
    """Operation undefined for the zero element (e.g. multiplicative order)."""


class NotDivisor(PPFError):
    """d must divide the multiplicative group order and does not."""


class CharThree(PPFError):
    """No element of order 3 exists in characteristic 3."""


class NoSolution(PPFError):
    """The requested equation has no solution in the field."""


class NotABasis(PPFError):
    """A linearly independent spanning set was required."""


class SingularGram(PPFError):
    """The trace Gram system is singular (the given set is not a basis)."""


class DimensionMismatch(PPFError):
    """Vector/basis lengths do not match the ambient extension degree."""


class NotPermutation(PPFError):
    """A permutation (of the field or of the vector space) was required."""


class ComponentNotPermutation(PPFError):
    """A componentwise map requires every component to permute the base field."""


class BadModulusClass(PPFError):
    """Field size q is not admissible for the requested family."""


class EpsilonDomain(PPFError):
    """The epsilon parameter lies outside the family's allowed domain."""


class BadKind(PPFError):
    """Unknown example-polynomial or variant kind."""


class BadParams(PPFError):
    """Parameters violate an operation's preconditions."""


class BadCongruence(PPFError):
    """q lies in the wrong congruence class for the requested check."""


class ParseError(PPFError):
    """Malformed field spec, element or polynomial text."""
