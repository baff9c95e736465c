"""Exception types shared across the package."""


class HtutteError(Exception):
    """Base class for every error this package raises deliberately."""


class CompositeNonPrimePower(HtutteError):
    """Requested ring order is not a prime power."""


class ReducibleModulus(HtutteError):
    """Supplied field modulus polynomial is reducible."""


class ConjugationUnsupported(HtutteError):
    """Conjugation needs a field of square order."""


class NonIntegralExponent(HtutteError):
    """Substitution requires integer exponents on the substituted variable."""


class NotDivisible(HtutteError):
    """Monomial division left a remainder."""


class IrrationalPower(HtutteError):
    """A fractional power of a rational base has no exact rational value."""


class DegreeZero(HtutteError):
    """Differentiation is undefined in degree zero."""


class EnumerationTooLarge(HtutteError):
    """Requested enumeration exceeds the configured size cap."""


class GroupTooLarge(HtutteError):
    """Group closure exceeded the element cap."""


class CharacterIllDefined(HtutteError):
    """Two words for the same group element disagree on the character."""


class NonIntegerDimension(HtutteError):
    """A Molien coefficient failed to be a nonnegative integer."""


class NotRelativeInvariant(HtutteError):
    """The polynomial is not an eigenvector of a group generator."""
