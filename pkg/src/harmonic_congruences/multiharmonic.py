"""Multiple harmonic sums over strictly increasing index tuples.

``mhs`` evaluates sum_{1 <= i_1 < ... < i_d <= n} prod 1/i_r^{s_r} modulo p^e
with d running prefix passes.  ``mhs_bruteforce`` enumerates the tuples
explicitly and returns the exact rational; it is shipped so that any fast
result can be audited.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, List, Tuple

from .errors import NonInvertibleDenominator, OracleBoundExceeded, OutOfApplicabilityRange
from .harmonic import harmonic_exact
from .localfield import LocalResidue, PrimeContext, prime_context, reduce
from .results import CheckResult, Part, congruence_check, timed

ORACLE_MAX_N = 60
ORACLE_MAX_DEPTH = 4
# depth-4 enumeration stays cheap enough for per-prime auditing only below this
ORACLE_MAX_PRIME_DEPTH4 = 31


@dataclass(frozen=True)
class MhsSpec:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not exps:
            raise ValueError("depth must be >= 1")
        if any(s < 1 for s in exps):
            raise ValueError(f"exponents must be >= 1, got {exps}")

    @property
    def depth(self) -> int:
        return len(self.exponents)

    def reversed(self) -> "MhsSpec":
        return MhsSpec(self.exponents[::-1])

    def __str__(self):
        return "(" + ",".join(map(str, self.exponents)) + ")"


def as_spec(spec) -> MhsSpec:
    return spec if isinstance(spec, MhsSpec) else MhsSpec(tuple(spec))


def mhs_prefixes(spec, n: int, ctx: PrimeContext) -> List[int]:
    """Residues of the sum with upper bound n' for every n' = 0..n."""
    spec = as_spec(spec)
    if n >= ctx.prime:
        raise NonInvertibleDenominator(f"index {ctx.prime} has no inverse mod {ctx.prime}")
    M, inv = ctx.modulus, ctx.inverses
    # prev[k] holds the depth r-1 sum with all indices <= k
    prev = [1] * (n + 1)
    for s in spec.exponents:
        cur = [0] * (n + 1)
        for k in range(1, n + 1):
            cur[k] = (cur[k - 1] + prev[k - 1] * pow(inv[k], s, M)) % M
        prev = cur
    return prev


def mhs(spec, n: int, ctx) -> LocalResidue:
    if not isinstance(ctx, PrimeContext):
        ctx = prime_context(*ctx)
    return ctx.residue(mhs_prefixes(spec, n, ctx)[n])


def _check_oracle_bounds(spec: MhsSpec, n: int) -> None:
    if n > ORACLE_MAX_N or spec.depth > ORACLE_MAX_DEPTH:
        raise OracleBoundExceeded(
            f"enumeration limited to n <= {ORACLE_MAX_N}, depth <= {ORACLE_MAX_DEPTH}; "
            f"got n={n}, depth={spec.depth}"
        )


def mhs_bruteforce_prefixes(spec, n: int) -> List[Fraction]:
    """Exact sums for every upper bound 0..n from a single enumeration.

    Every tuple is visited once and credited to the bucket of its largest
    index; the buckets are then accumulated.  Terms are integers over the
    common denominator lcm(1..n)^(s_1 + ... + s_d).
    """
    spec = as_spec(spec)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _check_oracle_bounds(spec, n)
    L = lcm(*range(1, n + 1)) if n else 1
    weights = [[0] + [(L // i) ** s for i in range(1, n + 1)] for s in spec.exponents]
    buckets = [0] * (n + 1)
    for idx in combinations(range(1, n + 1), spec.depth):
        term = 1
        for w, i in zip(weights, idx):
            term *= w[i]
        buckets[idx[-1]] += term
    den = L ** sum(spec.exponents)
    out, acc = [], 0
    for b in buckets:
        acc += b
        out.append(Fraction(acc, den))
    return out


def mhs_bruteforce(spec, n: int) -> Fraction:
    return mhs_bruteforce_prefixes(spec, n)[n]


A_SPEC = MhsSpec((2, 1, 1))  # 1/(i^2 j k)
B_SPEC = MhsSpec((1, 2, 1))  # 1/(i j^2 k)
C_SPEC = MhsSpec((1, 1, 2))  # 1/(i j k^2)
E3_SPEC = MhsSpec((1, 1, 1))
E4_SPEC = MhsSpec((1, 1, 1, 1))


def newton_identity_check(n: int, *, perturb: bool = False) -> CheckResult:
    """Exact check of e3 * p1 = A + B + C + 4 e4 with every sum bounded by n."""
    if n < 4:
        raise OutOfApplicabilityRange(f"needs n >= 4 so that a quadruple exists, got {n}")
    if n > ORACLE_MAX_N:
        raise OracleBoundExceeded(f"n <= {ORACLE_MAX_N} required, got {n}")
    with timed() as watch:
        lhs = mhs_bruteforce(E3_SPEC, n) * harmonic_exact(n, 1)
        rhs = (
            mhs_bruteforce(A_SPEC, n)
            + mhs_bruteforce(B_SPEC, n)
            + mhs_bruteforce(C_SPEC, n)
            + 4 * mhs_bruteforce(E4_SPEC, n)
        )
    return CheckResult.from_parts(
        "newton_identity",
        None,
        [Part(f"e3*p1 = A+B+C+4e4 (n={n})", lhs, rhs)],
        elapsed=watch.elapsed,
        perturb=perturb,
    )


def oracle_allows(spec: MhsSpec, p: int) -> bool:
    if p - 1 > ORACLE_MAX_N or spec.depth > ORACLE_MAX_DEPTH:
        return False
    return spec.depth < 4 or p <= ORACLE_MAX_PRIME_DEPTH4


def mhs_oracle_parts(p: int, specs: Iterable[MhsSpec]) -> List[Part]:
    out = []
    for spec in specs:
        if oracle_allows(spec, p):
            out.append(
                Part(
                    f"oracle:mhs{spec} at n=p-1",
                    mhs(spec, p - 1, (p, 1)).residue,
                    reduce(mhs_bruteforce(spec, p - 1), (p, 1)).residue,
                    p,
                )
            )
    return out


@congruence_check("triple_relations")
def triple_relations_check(p, *, oracle=False):
    ctx = prime_context(p, 1)
    a = mhs(A_SPEC, p - 1, ctx).residue
    b = mhs(B_SPEC, p - 1, ctx).residue
    c = mhs(C_SPEC, p - 1, ctx).residue
    yield Part("A = C mod p", a, c, p)
    yield Part("A = -B/2 mod p", a, -b * pow(2, -1, p) % p, p)
    yield Part("A = 0 mod p", a, 0, p)
    yield Part("B = 0 mod p", b, 0, p)
    yield Part("C = 0 mod p", c, 0, p)
    if oracle:
        yield from mhs_oracle_parts(p, (A_SPEC, B_SPEC, C_SPEC))


@congruence_check("quadruple")
def quadruple_check(p, *, oracle=False):
    yield Part("e4(1..p-1) = 0 mod p", mhs(E4_SPEC, p - 1, (p, 1)).residue, 0, p)
    if oracle:
        yield from mhs_oracle_parts(p, (E4_SPEC,))
