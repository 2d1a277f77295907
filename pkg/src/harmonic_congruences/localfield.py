"""Exact rationals and their residues modulo prime powers.

A rational ``m/n`` with ``p`` not dividing ``n`` has a well defined residue
modulo ``p**e``: the class of ``m * n'`` where ``n'`` inverts ``n``.  The
:class:`LocalResidue` type stores that fused class directly, so congruence
between two rationals is a single integer comparison.

``ExactRational`` is :class:`fractions.Fraction`, which already keeps its
values reduced with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Tuple, Union

from .errors import (
    ContextMismatch,
    InsufficientValuation,
    NonInvertible,
    NonInvertibleDenominator,
    UndefinedValuation,
)

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "LocalResidue",
    "PrimeContext",
    "prime_context",
    "is_prime",
    "reduce",
    "lr_add",
    "lr_mul",
    "lr_neg",
    "lr_inv",
    "valuation",
    "lift_divide",
]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _check_prime_power(prime: int, exponent: int) -> None:
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if exponent < 1:
        raise ValueError(f"exponent must be >= 1, got {exponent}")


@dataclass(frozen=True)
class LocalResidue:
    """Residue class of a p-integral rational modulo ``prime**exponent``."""

    residue: int
    prime: int
    exponent: int

    def __post_init__(self):
        _check_prime_power(self.prime, self.exponent)
        if not 0 <= self.residue < self.prime**self.exponent:
            raise ValueError(
                f"residue {self.residue} not canonical modulo {self.prime}^{self.exponent}"
            )

    @classmethod
    def of(cls, value: int, prime: int, exponent: int) -> "LocalResidue":
        return cls(value % prime**exponent, prime, exponent)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def _same(self, other: "LocalResidue") -> None:
        if (self.prime, self.exponent) != (other.prime, other.exponent):
            raise ContextMismatch(
                f"mod {self.prime}^{self.exponent} vs mod {other.prime}^{other.exponent}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            return LocalResidue.of(self.residue + other, self.prime, self.exponent)
        if not isinstance(other, LocalResidue):
            return NotImplemented
        return lr_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return LocalResidue.of(self.residue - other, self.prime, self.exponent)
        if not isinstance(other, LocalResidue):
            return NotImplemented
        return lr_add(self, lr_neg(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return LocalResidue.of(self.residue * other, self.prime, self.exponent)
        if not isinstance(other, LocalResidue):
            return NotImplemented
        return lr_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return lr_neg(self)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"LocalResidue({self.residue} mod {self.prime}^{self.exponent})"


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """A prime power ``p**e`` together with inverses of 1..p-1 modulo it.

    Build instances through :func:`prime_context`, which memoizes one table
    per ``(p, e)``.
    """

    prime: int
    exponent: int
    inverses: Tuple[int, ...] = field(repr=False)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def inv(self, k: int) -> int:
        """Inverse of ``k`` modulo p^e; ``k`` must lie in 1..p-1."""
        if not 0 < k < self.prime:
            raise NonInvertibleDenominator(f"{k} outside 1..{self.prime - 1}")
        return self.inverses[k]

    def residue(self, value: int) -> LocalResidue:
        return LocalResidue.of(value, self.prime, self.exponent)

    def __eq__(self, other):
        if not isinstance(other, PrimeContext):
            return NotImplemented
        return (self.prime, self.exponent) == (other.prime, other.exponent)

    def __hash__(self):
        return hash((self.prime, self.exponent))


@lru_cache(maxsize=None)
def prime_context(prime: int, exponent: int) -> PrimeContext:
    _check_prime_power(prime, exponent)
    modulus = prime**exponent
    # index 0 is a placeholder so that inverses[k] inverts k
    inverses = (0,) + tuple(pow(k, -1, modulus) for k in range(1, prime))
    return PrimeContext(prime, exponent, inverses)


def _as_context(ctx_or_pair) -> PrimeContext:
    if isinstance(ctx_or_pair, PrimeContext):
        return ctx_or_pair
    return prime_context(*ctx_or_pair)


def reduce(q: Union[Fraction, int], ctx) -> LocalResidue:
    """Residue of the rational ``q`` modulo ``p**e``.

    >>> reduce(Fraction(1, 2), prime_context(7, 1)).residue
    4
    """
    ctx = _as_context(ctx)
    q = Fraction(q)
    p, modulus = ctx.prime, ctx.modulus
    den = q.denominator
    if den % p == 0:
        raise NonInvertibleDenominator(f"{p} divides the denominator of {q}")
    if den < p:
        inv = ctx.inverses[den]
    else:
        inv = pow(den, -1, modulus)
    return LocalResidue(q.numerator * inv % modulus, p, ctx.exponent)


def lr_add(a: LocalResidue, b: LocalResidue) -> LocalResidue:
    a._same(b)
    return LocalResidue((a.residue + b.residue) % a.modulus, a.prime, a.exponent)


def lr_mul(a: LocalResidue, b: LocalResidue) -> LocalResidue:
    a._same(b)
    return LocalResidue(a.residue * b.residue % a.modulus, a.prime, a.exponent)


def lr_neg(a: LocalResidue) -> LocalResidue:
    return LocalResidue(-a.residue % a.modulus, a.prime, a.exponent)


def lr_inv(a: LocalResidue) -> LocalResidue:
    if a.residue % a.prime == 0:
        raise NonInvertible(f"{a.prime} divides {a.residue}")
    return LocalResidue(pow(a.residue, -1, a.modulus), a.prime, a.exponent)


def valuation(q: Union[Fraction, int], p: int) -> int:
    """Exponent of ``p`` in the nonzero rational ``q``; negative for poles."""
    q = Fraction(q)
    if q == 0:
        raise UndefinedValuation("valuation of 0 is infinite")
    v = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def lift_divide(a: LocalResidue, t: int) -> LocalResidue:
    """Divide a residue mod p^(e+t) by p^t, landing modulo p^e.

    The residue must be divisible by p^t; the quotient is then determined
    modulo p^e exactly.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t >= a.exponent:
        raise ValueError(f"cannot divide by {a.prime}^{t} at exponent {a.exponent}")
    pt = a.prime**t
    if a.residue % pt:
        raise InsufficientValuation(f"{a.prime}^{t} does not divide {a.residue}")
    e = a.exponent - t
    return LocalResidue(a.residue // pt % a.prime**e, a.prime, e)
