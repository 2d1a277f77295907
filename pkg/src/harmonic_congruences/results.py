"""Outcome records shared by every check."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from functools import wraps
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import OutOfApplicabilityRange
from .localfield import is_prime

Value = Union[int, Fraction]


@dataclass(frozen=True)
class Part:
    """One congruence (or exact identity) inside a check.

    ``modulus`` is ``None`` for exact identities over the rationals, in which
    case ``lhs`` and ``rhs`` are fractions; otherwise they are canonical
    residues in ``[0, modulus)``.
    """

    label: str
    lhs: Value
    rhs: Value
    modulus: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def perturbed(self) -> "Part":
        bumped = self.lhs + 1
        if self.modulus is not None:
            bumped %= self.modulus
        return replace(self, lhs=bumped)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    prime: Optional[int]
    passed: bool
    lhs: Value
    rhs: Value
    modulus: Optional[int]
    elapsed: float = 0.0
    parts: Tuple[Part, ...] = field(default=(), compare=False)
    oracle_checked: bool = False
    error: Optional[str] = None

    @classmethod
    def from_parts(
        cls,
        check_id: str,
        prime: Optional[int],
        parts: Sequence[Part],
        *,
        elapsed: float = 0.0,
        oracle_checked: bool = False,
        perturb: bool = False,
    ) -> "CheckResult":
        parts = list(parts)
        if not parts:
            raise ValueError("a check needs at least one part")
        if perturb:
            parts[0] = parts[0].perturbed()
        # the headline pair is the first failing part, else the first part
        head = next((pt for pt in parts if not pt.passed), parts[0])
        return cls(
            check_id=check_id,
            prime=prime,
            passed=all(pt.passed for pt in parts),
            lhs=head.lhs,
            rhs=head.rhs,
            modulus=head.modulus,
            elapsed=elapsed,
            parts=tuple(parts),
            oracle_checked=oracle_checked,
        )

    @property
    def failed_parts(self) -> List[Part]:
        return [pt for pt in self.parts if not pt.passed]


class Stopwatch:
    elapsed = 0.0


@contextmanager
def timed():
    watch = Stopwatch()
    start = time.perf_counter()
    try:
        yield watch
    finally:
        watch.elapsed = time.perf_counter() - start


def require_prime(p: int, min_prime: int = 7) -> None:
    if not is_prime(p):
        raise OutOfApplicabilityRange(f"{p} is not prime")
    if p < min_prime:
        raise OutOfApplicabilityRange(f"requires p >= {min_prime}, got {p}")


def congruence_check(check_id: str, min_prime: int = 7):
    """Turn a generator of :class:`Part` objects into a prime-indexed check.

    The wrapped callable validates the prime, times the evaluation and folds
    the parts into a :class:`CheckResult`.  Parts whose label starts with
    ``oracle:`` are brute-force cross-checks and set ``oracle_checked``.
    """

    def decorate(fn):
        @wraps(fn)
        def run(p: int, *, oracle: bool = False, perturb: bool = False) -> CheckResult:
            require_prime(p, min_prime)
            with timed() as watch:
                parts = list(fn(p, oracle=oracle))
            return CheckResult.from_parts(
                check_id,
                p,
                parts,
                elapsed=watch.elapsed,
                oracle_checked=any(pt.label.startswith("oracle:") for pt in parts),
                perturb=perturb,
            )

        run.check_id = check_id
        run.min_prime = min_prime
        return run

    return decorate
