"""Harmonic numbers of order m, exactly and modulo prime powers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Tuple

from .errors import NonInvertibleDenominator
from .localfield import LocalResidue, PrimeContext, prime_context, reduce
from .results import Part, congruence_check


def _power_sum(lo: int, hi: int, m: int) -> Tuple[int, int]:
    """Unreduced (num, den) of sum 1/k^m for lo <= k < hi, by halving."""
    if hi - lo == 1:
        return 1, lo**m
    mid = (lo + hi) // 2
    a, b = _power_sum(lo, mid, m)
    c, d = _power_sum(mid, hi, m)
    return a * d + b * c, b * d


def harmonic_exact(n: int, m: int = 1) -> Fraction:
    """H_{n,m} = sum_{k=1}^{n} 1/k^m as a reduced fraction (H_{0,m} = 0)."""
    if n < 0 or m < 1:
        raise ValueError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    if n == 0:
        return Fraction(0)
    num, den = _power_sum(1, n + 1, m)
    return Fraction(num, den)


@dataclass(frozen=True)
class HarmonicTable:
    """Prefix sums H_{0,m}, ..., H_{N,m} modulo p^e, stored as plain residues."""

    ctx: PrimeContext
    order: int
    residues: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.residues) - 1

    @property
    def values(self) -> List[LocalResidue]:
        return [self.ctx.residue(r) for r in self.residues]

    def value(self, k: int) -> LocalResidue:
        return self.ctx.residue(self.residues[k])

    def __getitem__(self, k: int) -> int:
        return self.residues[k]


def harmonic_table(n: int, m: int, ctx: PrimeContext) -> HarmonicTable:
    if n >= ctx.prime:
        raise NonInvertibleDenominator(f"1/{ctx.prime}^{m} has no residue mod {ctx.prime}")
    if n < 0 or m < 1:
        raise ValueError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    M, inv = ctx.modulus, ctx.inverses
    acc = 0
    out = [0]
    for k in range(1, n + 1):
        acc = (acc + pow(inv[k], m, M)) % M
        out.append(acc)
    return HarmonicTable(ctx, m, tuple(out))


@lru_cache(maxsize=512)
def full_table(p: int, e: int, m: int) -> HarmonicTable:
    """H_{k,m} mod p^e for k = 0..p-1, shared between checks on one prime."""
    return harmonic_table(p - 1, m, prime_context(p, e))


def oracle_parts(p: int, e: int, orders) -> List[Part]:
    """Cross-check the tables' top entries against exact summation."""
    M = p**e
    return [
        Part(
            f"oracle:H_{{p-1,{m}}} mod p^{e}",
            full_table(p, e, m)[p - 1],
            reduce(harmonic_exact(p - 1, m), (p, e)).residue,
            M,
        )
        for m in orders
    ]


@congruence_check("wolstenholme")
def wolstenholme_suite(p, *, oracle=False):
    for m in range(1, 5):
        if p < m + 3:
            continue
        e = 1 if m % 2 == 0 else 2
        yield Part(f"H_{{p-1,{m}}} = 0 mod p^{e}", full_table(p, e, m)[p - 1], 0, p**e)
    if oracle:
        yield from oracle_parts(p, 2, (1, 2, 3, 4))


@congruence_check("reflection")
def reflection_check(p, *, oracle=False):
    h = full_table(p, 1, 1)
    for k in range(1, p):
        yield Part(f"H_{{p-{k}}} = H_{{{k - 1}}} mod p", h[p - k], h[k - 1], p)
    if oracle:
        yield from oracle_parts(p, 1, (1,))


def binomial_residues(p: int, e: int) -> List[int]:
    """C(p-1, k) mod p^e for k = 0..p-1 via the running product (p-i)/i."""
    ctx = prime_context(p, e)
    M = ctx.modulus
    out = [1]
    for i in range(1, p):
        out.append(out[-1] * (p - i) % M * ctx.inverses[i] % M)
    return out


@congruence_check("binomial_expansion")
def binomial_expansion_check(p, *, oracle=False):
    M = p**3
    h1, h2 = full_table(p, 3, 1), full_table(p, 3, 2)
    half_p2 = p * p * pow(2, -1, M) % M
    binom = binomial_residues(p, 3)
    for k in range(1, p):
        lhs = (-1) ** k * binom[k] % M
        rhs = (1 - p * h1[k] + half_p2 * (h1[k] * h1[k] - h2[k])) % M
        yield Part(f"(-1)^{k} C(p-1,{k}) mod p^3", lhs, rhs, M)
    if oracle:
        for k in range(1, p):
            yield Part(f"oracle:C(p-1,{k}) mod p^3", binom[k], comb(p - 1, k) % M, M)
        yield from oracle_parts(p, 3, (1, 2))


@congruence_check("doubling")
def doubling_check(p, *, oracle=False):
    M = p**4
    lhs = 2 * full_table(p, 4, 1)[p - 1] % M
    rhs = -p * full_table(p, 4, 2)[p - 1] % M
    yield Part("2 H_{p-1} = -p H_{p-1,2} mod p^4", lhs, rhs, M)
    if oracle:
        yield from oracle_parts(p, 4, (1, 2))
