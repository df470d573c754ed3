"""Exception types shared across the package.

Construction and input errors (NotPrime, Reducible, Overflow, BadParam, ...)
signal caller mistakes.  RoundingDrift and IntegerOverflow signal that a
computation left its guaranteed-exact regime and must not be trusted.
"""


class FfbError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(FfbError):
    """The characteristic passed to a field constructor is not prime."""


class Reducible(FfbError):
    """A supplied modulus polynomial factors over the base field."""


class Overflow(FfbError):
    """Requested field order exceeds the configured cap."""


class DivideByZero(FfbError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class BadExponent(FfbError):
    """Character index outside the valid range [0, q-1)."""


class IntegerOverflow(FfbError):
    """An exact integer computation would exceed the 64-bit range."""


class RoundingDrift(FfbError):
    """A float quantity that must be an integer drifted past tolerance."""


class NoNontrivialCharacter(FfbError):
    """The field has no nontrivial multiplicative character (q = 2)."""


class LambdaZero(FfbError):
    """The requested target value must be nonzero."""


class NotPrimeField(FfbError):
    """Operation defined only over prime fields (k = 1)."""


class BadParam(FfbError):
    """A set description or CLI parameter is malformed; message names it."""
