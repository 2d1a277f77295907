"""Exception hierarchy shared by every module of the package."""


class CongruenceError(Exception):
    """Base class for all errors raised by this package."""


class NonInvertible(CongruenceError, ArithmeticError):
    """A residue divisible by p has no multiplicative inverse."""


class NonInvertibleDenominator(NonInvertible):
    """A rational whose denominator is divisible by p cannot be reduced mod p^e."""


class ContextMismatch(CongruenceError, ValueError):
    """Residues living modulo different prime powers were combined."""


class UndefinedValuation(CongruenceError, ValueError):
    """The p-adic valuation of zero was requested."""


class InsufficientValuation(CongruenceError, ArithmeticError):
    """Division by p^t was requested for a residue not divisible by p^t."""


class OutOfApplicabilityRange(CongruenceError, ValueError):
    """A check was invoked on a prime (or parameter) outside its stated range."""


class VonStaudtPole(CongruenceError, ArithmeticError):
    """The Bernoulli number's denominator is divisible by p."""


class OracleBoundExceeded(CongruenceError, ValueError):
    """A brute-force oracle was asked for an enumeration beyond its enforced bound."""


class UnknownCheckId(CongruenceError, KeyError):
    """A check id not present in the registry was requested."""

    def __str__(self):
        return Exception.__str__(self)


class BadRange(CongruenceError, ValueError):
    """An integer interval with invalid or inverted bounds."""
