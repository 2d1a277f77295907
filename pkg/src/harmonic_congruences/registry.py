"""Catalog of checks and the (prime x check) execution engine."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import harmonic, identities, multiharmonic as mh
from .bernoulli import CACHE as BERNOULLI_CACHE
from .errors import CongruenceError, UnknownCheckId
from .localfield import is_prime
from .results import CheckResult, Part


@dataclass(frozen=True)
class CheckDescriptor:
    id: str
    description: str
    anchor: str  # the statement being verified, written out
    modulus_exponent: Optional[int]  # None for exact identities
    min_prime: int = 7
    max_prime: Optional[int] = None
    needs_bernoulli: Callable[[int], int] = lambda p: 0
    runner: Callable[..., CheckResult] = None

    def applies(self, p: int) -> bool:
        return p >= self.min_prime and (self.max_prime is None or p <= self.max_prime)


def _from_exact(check_id: str, p: int, results: Sequence[CheckResult], perturb: bool) -> CheckResult:
    parts: List[Part] = [pt for r in results for pt in r.parts]
    return CheckResult.from_parts(
        check_id, p, parts, elapsed=sum(r.elapsed for r in results), perturb=perturb
    )


def _hernandez_at(p, *, oracle=False, perturb=False):
    rs = [identities.hernandez_check(p - 1, m) for m in range(1, identities.HERNANDEZ_MAX_M + 1)]
    return _from_exact("hernandez", p, rs, perturb)


def _newton_at(p, *, oracle=False, perturb=False):
    return _from_exact("newton_identity", p, [mh.newton_identity_check(p - 1)], perturb)


def _identity_21_at(p, *, oracle=False, perturb=False):
    return _from_exact("identity_21", p, [identities.identity_21_check(p - 1)], perturb)


_DESCRIPTORS = [
    CheckDescriptor(
        "reflection",
        "harmonic numbers are symmetric about (p-1)/2 modulo p",
        "H_{p-k} = H_{k-1} mod p, k = 1..p-1",
        1,
        runner=harmonic.reflection_check,
    ),
    CheckDescriptor(
        "binomial_expansion",
        "expansion of C(p-1,k) in harmonic numbers modulo p^3",
        "(-1)^k C(p-1,k) = 1 - p H_k + p^2/2 (H_k^2 - H_{k,2}) mod p^3",
        3,
        runner=harmonic.binomial_expansion_check,
    ),
    CheckDescriptor(
        "wolstenholme",
        "parity-dependent vanishing of H_{p-1,m} for m <= 4",
        "H_{p-1,m} = 0 mod p (m even), mod p^2 (m odd), p >= m+3",
        2,
        runner=harmonic.wolstenholme_suite,
    ),
    CheckDescriptor(
        "doubling",
        "H_{p-1} against p H_{p-1,2} modulo p^4",
        "2 H_{p-1} = -p H_{p-1,2} mod p^4",
        4,
        runner=harmonic.doubling_check,
    ),
    CheckDescriptor(
        "lemma_2_3",
        "vanishing and proportionality of cubic harmonic sums",
        "sum H_{k-1}/k^3 = sum H_k/k^3 = 0; sum H_k^3/k = 3/2 sum H_k^2/k^2; "
        "sum H_{k-1,3}/k = sum H_{k,3}/k = 0 mod p; sum H_k/k^2 = sum H_k^2/k mod p^2",
        2,
        runner=identities.lemma_2_3_check,
    ),
    CheckDescriptor(
        "lemma_2_4",
        "sum H_k H_{k,2}/k as two triple harmonic sums",
        "sum H_k H_{k,2}/k = S(1,2,1) + S(2,1,1) mod p",
        1,
        runner=identities.lemma_2_4_check,
    ),
    CheckDescriptor(
        "lemma_2_6",
        "sum H_k H_{k,2}/k against sum H_k^2/k^2",
        "sum H_k H_{k,2}/k = -3/2 sum H_k^2/k^2 mod p",
        1,
        runner=identities.lemma_2_6_check,
    ),
    CheckDescriptor(
        "triple_relations",
        "depth-3 sums with one squared index",
        "S(2,1,1) = S(1,1,2) = -S(1,2,1)/2 = 0 mod p",
        1,
        runner=mh.triple_relations_check,
    ),
    CheckDescriptor(
        "quadruple",
        "fourth elementary symmetric sum of 1/k",
        "S(1,1,1,1) = 0 mod p",
        1,
        runner=mh.quadruple_check,
    ),
    CheckDescriptor(
        "lemma_2_8",
        "sum H_k^2/k^2 against the middle-squared triple sum",
        "sum H_k^2/k^2 = -S(1,2,1) mod p",
        1,
        runner=identities.lemma_2_8_check,
    ),
    CheckDescriptor(
        "lemma_2_9",
        "three quartic harmonic sums vanish",
        "sum H_k^2/k^2 = sum H_k H_{k,2}/k = sum H_k^3/k = 0 mod p",
        1,
        runner=identities.lemma_2_9_check,
    ),
    CheckDescriptor(
        "theorem_1_1",
        "four expressions for sum H_k/k^2 modulo p^2",
        "sum H_k/k^2 = sum H_k^2/k = -3/p^2 H_{p-1} = 3/(2p) H_{p-1,2} mod p^2",
        2,
        runner=identities.theorem_1_1_check,
    ),
    CheckDescriptor(
        "corollary_1_2",
        "the same sums in terms of Bernoulli numbers",
        "sum H_k^2/k = sum H_k/k^2 = 3(B_{2p-4}/(2p-4) - 2B_{p-3}/(p-3)) mod p^2; = B_{p-3} mod p",
        2,
        needs_bernoulli=lambda p: 2 * p - 4,
        runner=identities.corollary_1_2_check,
    ),
    CheckDescriptor(
        "remarks",
        "Bernoulli convolution and the mod p^3 difference of the two sums",
        "sum_j B_j B_{p-3-j} = 0 mod p; sum H_k^2/k^2 = -sum_j B_j B_{p-3-j} mod p; "
        "H_{p-1,3} = -6p^2 B_{p-5}/5 and sum H_k^2/k - sum H_k/k^2 = 2p^2 B_{p-5}/5 mod p^3",
        3,
        needs_bernoulli=lambda p: p - 3,
        runner=identities.remarks_check,
    ),
    CheckDescriptor(
        "hernandez",
        "alternating binomial sum over non-decreasing tuples, n = p-1, m = 1..4 (exact)",
        "sum_k C(n,k) (-1)^(k-1) sum_{i_1<=...<=i_m=k} 1/(i_1...i_m) = H_{n,m}",
        None,
        max_prime=identities.HERNANDEZ_MAX_N + 1,
        runner=_hernandez_at,
    ),
    CheckDescriptor(
        "newton_identity",
        "power-sum times e3 expansion, n = p-1 (exact)",
        "e3 * H_n = S(2,1,1) + S(1,2,1) + S(1,1,2) + 4 e4",
        None,
        max_prime=mh.ORACLE_MAX_N + 1,
        runner=_newton_at,
    ),
    CheckDescriptor(
        "identity_21",
        "difference of the two sums as a cube, n = p-1 (exact)",
        "sum H_k^2/k - sum H_k/k^2 = (H_n^3 - H_{n,3})/3",
        None,
        runner=_identity_21_at,
    ),
]

REGISTRY: Dict[str, CheckDescriptor] = {d.id: d for d in _DESCRIPTORS}
CHECK_IDS: Tuple[str, ...] = tuple(REGISTRY)


def resolve(selection: Optional[Iterable[str]]) -> List[str]:
    """Expand ``None``/``"all"`` and validate ids, preserving registry order."""
    if selection is None:
        return list(CHECK_IDS)
    ids = list(selection)
    if ids == ["all"]:
        return list(CHECK_IDS)
    for i in ids:
        if i not in REGISTRY:
            raise UnknownCheckId(f"unknown check id {i!r}")
    return [i for i in CHECK_IDS if i in ids]


@dataclass
class RegistryRun:
    results: List[CheckResult]
    skipped: List[Tuple[str, int]]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


def run_one(check_id: str, p: int, *, oracle: bool = False, perturb: bool = False) -> CheckResult:
    desc = REGISTRY[check_id]
    try:
        return desc.runner(p, oracle=oracle, perturb=perturb)
    except CongruenceError as exc:
        # e.g. a lift failing because p^t does not divide the dividend
        return CheckResult(check_id, p, False, None, None, None, error=f"{type(exc).__name__}: {exc}")


def _run_prime(p: int, ids: Sequence[str], oracle: bool, mutate: Optional[Tuple[str, int]]):
    out = []
    for i in ids:
        out.append(run_one(i, p, oracle=oracle, perturb=mutate == (i, p)))
    return out


def _install_bernoulli(values):
    BERNOULLI_CACHE.install(values)


def plan(primes: Iterable[int], selection: Optional[Iterable[str]]):
    """Split (prime, check) pairs into applicable tasks and skipped pairs."""
    ids = resolve(selection)
    primes = sorted(set(primes))
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    tasks: List[Tuple[str, int]] = []
    skipped: List[Tuple[str, int]] = []
    for p in primes:
        for i in sorted(ids):
            (tasks if REGISTRY[i].applies(p) else skipped).append((i, p))
    return tasks, skipped


def iter_registry(
    tasks: Sequence[Tuple[str, int]],
    *,
    jobs: int = 1,
    oracle: bool = False,
    mutate: Optional[Tuple[str, int]] = None,
) -> Iterator[List[CheckResult]]:
    """Yield the results for each prime, in ascending prime order.

    Workers may finish in any order; emission waits for the next prime in
    sequence so the stream is identical for every ``jobs`` setting.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    by_prime: Dict[int, List[str]] = {}
    for i, p in sorted(tasks, key=lambda t: (t[1], t[0])):
        by_prime.setdefault(p, []).append(i)

    # Bernoulli values are computed once, up front, then shared read-only
    need = max((REGISTRY[i].needs_bernoulli(p) for i, p in tasks), default=0)
    BERNOULLI_CACHE.extend(need)

    if jobs == 1 or len(by_prime) <= 1:
        for p, ids in by_prime.items():
            yield _run_prime(p, ids, oracle, mutate)
        return
    with ProcessPoolExecutor(
        max_workers=min(jobs, len(by_prime)),
        initializer=_install_bernoulli,
        initargs=(BERNOULLI_CACHE.values,),
    ) as pool:
        futures = [pool.submit(_run_prime, p, ids, oracle, mutate) for p, ids in by_prime.items()]
        for fut in futures:
            yield fut.result()


def execute_registry(
    primes: Iterable[int],
    selection: Optional[Iterable[str]] = None,
    *,
    jobs: int = 1,
    oracle: bool = False,
    mutate: Optional[Tuple[str, int]] = None,
) -> RegistryRun:
    """Run every applicable (check, prime) pair.

    Results are ordered by (prime, check id) whatever ``jobs`` is.  ``mutate``
    names one pair whose first left-hand side is bumped by one before
    comparison, to show that the harness can fail.
    """
    tasks, skipped = plan(primes, selection)
    results: List[CheckResult] = []
    for chunk in iter_registry(tasks, jobs=jobs, oracle=oracle, mutate=mutate):
        results.extend(chunk)
    return RegistryRun(results, skipped)


def run_registry(primes, selection=None, **kwargs) -> List[CheckResult]:
    return execute_registry(primes, selection, **kwargs).results


def default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


__all__ = [
    "CHECK_IDS",
    "CheckDescriptor",
    "REGISTRY",
    "RegistryRun",
    "execute_registry",
    "iter_registry",
    "plan",
    "resolve",
    "run_one",
    "run_registry",
]
