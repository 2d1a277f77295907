"""End-to-end congruences and exact identities for harmonic sums over 1..p-1.

Each prime-indexed check recomputes the sums it needs at the exponent its
statement requires.  Statements that divide by p^t evaluate the dividend at
exponent e + t and apply :func:`lift_divide` last.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, lcm

from .bernoulli import bernoulli_exact, bernoulli_mod
from .errors import OracleBoundExceeded, OutOfApplicabilityRange
from .harmonic import full_table, harmonic_exact, oracle_parts
from .localfield import lift_divide, prime_context, reduce
from .multiharmonic import A_SPEC, B_SPEC, mhs, mhs_oracle_parts
from .results import CheckResult, Part, congruence_check, timed

HERNANDEZ_MAX_N = 25
HERNANDEZ_MAX_M = 4


class _Sums:
    """Weighted sums over k = 1..p-1 of products of harmonic tables, mod p^e."""

    def __init__(self, p: int, e: int):
        self.p, self.e = p, e
        self.M = p**e
        self.inv = prime_context(p, e).inverses
        self.h1 = full_table(p, e, 1).residues
        self.h2 = full_table(p, e, 2).residues
        self.h3 = full_table(p, e, 3).residues

    def total(self, term) -> int:
        M = self.M
        return sum(term(k) % M for k in range(1, self.p)) % M

    def hk_over_k2(self) -> int:
        h, inv = self.h1, self.inv
        return self.total(lambda k: h[k] * inv[k] * inv[k])

    def hk2_over_k(self) -> int:
        h, inv = self.h1, self.inv
        return self.total(lambda k: h[k] * h[k] * inv[k])

    def hk2_over_k2(self) -> int:
        h, inv = self.h1, self.inv
        return self.total(lambda k: h[k] * h[k] * inv[k] * inv[k])

    def hk3_over_k(self) -> int:
        h, inv = self.h1, self.inv
        return self.total(lambda k: h[k] ** 3 * inv[k])

    def hk_hk2_over_k(self) -> int:
        h, g, inv = self.h1, self.h2, self.inv
        return self.total(lambda k: h[k] * g[k] * inv[k])


def _fraction_residue(q: Fraction, p: int, e: int) -> int:
    return reduce(q, (p, e)).residue


# ---------------------------------------------------------------------------
# exact identities


def _nondecreasing_sum(k: int, m: int) -> Fraction:
    """sum over 1 <= i_1 <= ... <= i_m = k of 1/(i_1 ... i_m), streamed."""
    if m == 1:
        return Fraction(1, k)
    L = lcm(*range(1, k + 1))
    acc = 0
    for head in combinations_with_replacement(range(1, k + 1), m - 1):
        term = 1
        for i in head:
            term *= L // i
        acc += term
    return Fraction(acc, L ** (m - 1) * k)


def hernandez_sides(n: int, m: int):
    if n < 1 or m < 1:
        raise OutOfApplicabilityRange(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if n > HERNANDEZ_MAX_N or m > HERNANDEZ_MAX_M:
        raise OracleBoundExceeded(
            f"enumeration limited to n <= {HERNANDEZ_MAX_N}, m <= {HERNANDEZ_MAX_M}"
        )
    lhs = sum(
        (comb(n, k) * (-1) ** (k - 1) * _nondecreasing_sum(k, m) for k in range(1, n + 1)),
        Fraction(0),
    )
    return lhs, harmonic_exact(n, m)


def hernandez_check(n: int, m: int, *, perturb: bool = False) -> CheckResult:
    """Alternating binomial sum over non-decreasing tuples equals H_{n,m}."""
    with timed() as watch:
        lhs, rhs = hernandez_sides(n, m)
    return CheckResult.from_parts(
        "hernandez",
        None,
        [Part(f"hernandez n={n} m={m}", lhs, rhs)],
        elapsed=watch.elapsed,
        perturb=perturb,
    )


def identity_21_sides(n: int):
    if n < 1:
        raise OutOfApplicabilityRange(f"need n >= 1, got {n}")
    h = Fraction(0)
    left = Fraction(0)
    for k in range(1, n + 1):
        h += Fraction(1, k)
        left += h * h / k - h / (k * k)
    right = (h**3 - harmonic_exact(n, 3)) / 3
    return left, right


def identity_21_check(n: int, *, perturb: bool = False) -> CheckResult:
    """sum H_k^2/k - sum H_k/k^2 = (H_n^3 - H_{n,3})/3 over k <= n, exactly."""
    with timed() as watch:
        lhs, rhs = identity_21_sides(n)
    return CheckResult.from_parts(
        "identity_21",
        None,
        [Part(f"cube identity n={n}", lhs, rhs)],
        elapsed=watch.elapsed,
        perturb=perturb,
    )


def bernoulli_convolution(n: int) -> Fraction:
    """sum_{j=0}^{n} B_j B_{n-j}, exactly."""
    return sum((bernoulli_exact(j) * bernoulli_exact(n - j) for j in range(n + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# congruences over 1..p-1


@congruence_check("theorem_1_1")
def theorem_1_1_check(p, *, oracle=False):
    M = p * p
    s2 = _Sums(p, 2)
    members = {
        "sum H_k/k^2": s2.hk_over_k2(),
        "sum H_k^2/k": s2.hk2_over_k(),
        "-3/p^2 H_{p-1}": -3 * lift_divide(full_table(p, 4, 1).value(p - 1), 2).residue % M,
        "3/(2p) H_{p-1,2}": 3
        * pow(2, -1, M)
        * lift_divide(full_table(p, 3, 2).value(p - 1), 1).residue
        % M,
    }
    names = list(members)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            yield Part(f"{a} = {b} mod p^2", members[a], members[b], M)
    if oracle:
        yield from oracle_parts(p, 4, (1,))
        yield from oracle_parts(p, 3, (2,))
        yield from oracle_parts(p, 2, (1,))


@congruence_check("corollary_1_2")
def corollary_1_2_check(p, *, oracle=False):
    M = p * p
    s2 = _Sums(p, 2)
    a, b = s2.hk2_over_k(), s2.hk_over_k2()
    bern = 3 * (bernoulli_exact(2 * p - 4) / (2 * p - 4) - 2 * bernoulli_exact(p - 3) / (p - 3))
    c = _fraction_residue(bern, p, 2)
    yield Part("sum H_k^2/k = sum H_k/k^2 mod p^2", a, b, M)
    yield Part("sum H_k/k^2 = 3(B_{2p-4}/(2p-4) - 2B_{p-3}/(p-3)) mod p^2", b, c, M)
    s1 = _Sums(p, 1)
    bp3 = bernoulli_mod(p - 3, (p, 1)).residue
    yield Part("sum H_k^2/k = B_{p-3} mod p", s1.hk2_over_k(), bp3, p)
    yield Part("sum H_k/k^2 = B_{p-3} mod p", s1.hk_over_k2(), bp3, p)
    if oracle:
        yield from oracle_parts(p, 2, (1,))


@congruence_check("lemma_2_3")
def lemma_2_3_check(p, *, oracle=False):
    s = _Sums(p, 1)
    h, h3, inv = s.h1, s.h3, s.inv
    yield Part("sum H_{k-1}/k^3 = 0 mod p", s.total(lambda k: h[k - 1] * inv[k] ** 3), 0, p)
    yield Part("sum H_k/k^3 = 0 mod p", s.total(lambda k: h[k] * inv[k] ** 3), 0, p)
    yield Part(
        "sum H_k^3/k = 3/2 sum H_k^2/k^2 mod p",
        s.hk3_over_k(),
        3 * pow(2, -1, p) * s.hk2_over_k2() % p,
        p,
    )
    yield Part("sum H_{k-1,3}/k = 0 mod p", s.total(lambda k: h3[k - 1] * inv[k]), 0, p)
    yield Part("sum H_{k,3}/k = 0 mod p", s.total(lambda k: h3[k] * inv[k]), 0, p)
    sq = _Sums(p, 2)
    yield Part("sum H_k/k^2 = sum H_k^2/k mod p^2", sq.hk_over_k2(), sq.hk2_over_k(), p * p)
    if oracle:
        yield from oracle_parts(p, 2, (1, 3))


@congruence_check("lemma_2_4")
def lemma_2_4_check(p, *, oracle=False):
    lhs = _Sums(p, 1).hk_hk2_over_k()
    rhs = (mhs(B_SPEC, p - 1, (p, 1)).residue + mhs(A_SPEC, p - 1, (p, 1)).residue) % p
    yield Part("sum H_k H_{k,2}/k = B + A mod p", lhs, rhs, p)
    if oracle:
        yield from mhs_oracle_parts(p, (A_SPEC, B_SPEC))
        yield from oracle_parts(p, 1, (1, 2))


@congruence_check("lemma_2_6")
def lemma_2_6_check(p, *, oracle=False):
    s = _Sums(p, 1)
    rhs = -3 * pow(2, -1, p) * s.hk2_over_k2() % p
    yield Part("sum H_k H_{k,2}/k = -3/2 sum H_k^2/k^2 mod p", s.hk_hk2_over_k(), rhs, p)
    if oracle:
        yield from oracle_parts(p, 1, (1, 2))


@congruence_check("lemma_2_8")
def lemma_2_8_check(p, *, oracle=False):
    lhs = _Sums(p, 1).hk2_over_k2()
    rhs = -mhs(B_SPEC, p - 1, (p, 1)).residue % p
    yield Part("sum H_k^2/k^2 = -B mod p", lhs, rhs, p)
    if oracle:
        yield from mhs_oracle_parts(p, (B_SPEC,))
        yield from oracle_parts(p, 1, (1,))


@congruence_check("lemma_2_9")
def lemma_2_9_check(p, *, oracle=False):
    s = _Sums(p, 1)
    yield Part("sum H_k^2/k^2 = 0 mod p", s.hk2_over_k2(), 0, p)
    yield Part("sum H_k H_{k,2}/k = 0 mod p", s.hk_hk2_over_k(), 0, p)
    yield Part("sum H_k^3/k = 0 mod p", s.hk3_over_k(), 0, p)
    if oracle:
        yield from oracle_parts(p, 1, (1, 2))


@congruence_check("remarks")
def remarks_check(p, *, oracle=False):
    ctx = prime_context(p, 1)
    bern = [bernoulli_mod(j, ctx).residue for j in range(p - 2)]
    conv = sum(bern[j] * bern[p - 3 - j] for j in range(p - 2)) % p
    yield Part("sum_j B_j B_{p-3-j} = 0 mod p", conv, 0, p)
    yield Part("sum H_k^2/k^2 = -sum_j B_j B_{p-3-j} mod p", _Sums(p, 1).hk2_over_k2(), -conv % p, p)

    M3 = p**3
    bp5 = bernoulli_exact(p - 5)
    # p^2 * x mod p^3 only depends on x mod p
    yield Part(
        "H_{p-1,3} = -6 p^2 B_{p-5}/5 mod p^3",
        full_table(p, 3, 3)[p - 1],
        p * p * _fraction_residue(-6 * bp5 / 5, p, 1) % M3,
        M3,
    )
    s3 = _Sums(p, 3)
    yield Part(
        "sum H_k^2/k - sum H_k/k^2 = 2 p^2 B_{p-5}/5 mod p^3",
        (s3.hk2_over_k() - s3.hk_over_k2()) % M3,
        p * p * _fraction_residue(2 * bp5 / 5, p, 1) % M3,
        M3,
    )
    if oracle:
        if p <= 61:
            exact = bernoulli_convolution(p - 3)
            yield Part("oracle:exact convolution mod p", conv, _fraction_residue(exact, p, 1), p)
        yield from oracle_parts(p, 3, (1, 3))
