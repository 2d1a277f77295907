"""Bernoulli numbers from the binomial recurrence, exact and modulo p^e.

Convention: B_1 = -1/2, i.e. the coefficients of x/(e^x - 1).

The recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0 is run over integers: every
denominator of B_0..B_K is a squarefree product of primes q <= K + 1
(von Staudt-Clausen), so ``L * B_j`` is an integer for L the product of all
primes up to K + 1.  Only the final division by L goes through Fraction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .errors import VonStaudtPole
from .localfield import LocalResidue, PrimeContext, is_prime, prime_context, reduce


def _primorial(n: int) -> int:
    out = 1
    for q in range(2, n + 1):
        if is_prime(q):
            out *= q
    return out


class BernoulliCache:
    """Monotonically growing table of B_0..B_K."""

    def __init__(self):
        self._scale = 2
        self._scaled: List[int] = [2]  # B_0 = 1 at scale 2
        self._fractions: List[Fraction] = []

    def __len__(self):
        return len(self._scaled)

    @property
    def max_index(self) -> int:
        return len(self._scaled) - 1

    def extend(self, k: int) -> None:
        """Make sure B_0..B_k are available."""
        have = len(self._scaled)
        if k < have:
            return
        scale = _primorial(k + 1)
        factor = scale // self._scale
        b = [x * factor for x in self._scaled]
        for n in range(have, k + 1):
            # C(n+1, j) for j = 0..n-1, built incrementally along the row
            c = 1
            acc = 0
            for j in range(n):
                bj = b[j]
                if bj:
                    acc += c * bj
                c = c * (n + 1 - j) // (j + 1)
            # c is now C(n+1, n) = n + 1
            q, r = divmod(-acc, c)
            assert r == 0, "scaled Bernoulli value must stay integral"
            b.append(q)
        self._scale = scale
        self._scaled = b

    def __getitem__(self, k: int) -> Fraction:
        self.extend(k)
        while len(self._fractions) <= k:
            j = len(self._fractions)
            self._fractions.append(Fraction(self._scaled[j], self._scale))
        return self._fractions[k]

    @property
    def values(self) -> List[Fraction]:
        return [self[k] for k in range(len(self._scaled))]

    def install(self, values: Sequence[Fraction]) -> None:
        """Seed the cache from previously computed values (e.g. in a worker)."""
        if len(values) <= len(self._scaled):
            return
        scale = _primorial(len(values))
        scaled = []
        for v in values:
            x, r = divmod(v.numerator * scale, v.denominator)
            if r:
                raise ValueError(f"{v} is not a Bernoulli number at this scale")
            scaled.append(x)
        self._scale, self._scaled, self._fractions = scale, scaled, list(values)


CACHE = BernoulliCache()


def bernoulli_exact(k: int) -> Fraction:
    """B_k as a reduced fraction.

    >>> bernoulli_exact(4)
    Fraction(-1, 30)
    """
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    return CACHE[k]


def is_pole(k: int, p: int) -> bool:
    return k > 0 and k % 2 == 0 and k % (p - 1) == 0


def bernoulli_mod(k: int, ctx) -> LocalResidue:
    if not isinstance(ctx, PrimeContext):
        ctx = prime_context(*ctx)
    if is_pole(k, ctx.prime):
        raise VonStaudtPole(f"{ctx.prime} divides the denominator of B_{k}")
    return reduce(bernoulli_exact(k), ctx)
