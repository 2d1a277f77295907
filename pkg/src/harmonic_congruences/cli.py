"""Command-line front end.

    harmonic-congruences verify --primes 7..499 [--check id,id] [--format text|json|csv]
                                [--jobs N] [--oracle] [--timing] [--mutate [SEED]]
    harmonic-congruences list-checks
    harmonic-congruences eval --op harmonic|bernoulli|mhs|hernandez --args ...

Exit status: 0 when every record passes, 1 when any fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, TextIO, Tuple

from .bernoulli import bernoulli_exact, bernoulli_mod
from .errors import BadRange, CongruenceError
from .harmonic import harmonic_exact
from .identities import hernandez_sides
from .localfield import prime_context, reduce
from .multiharmonic import mhs, mhs_bruteforce
from .registry import REGISTRY, default_jobs, iter_registry, plan, resolve
from .results import CheckResult

FIELDS = ["check_id", "prime", "modulus", "lhs", "rhs", "pass", "oracle_checked", "elapsed_ms"]
DEFAULT_RANGE = (7, 499)


def sieve_primes(lo: int, hi: int) -> List[int]:
    """All primes in the closed interval [lo, hi], ascending."""
    if lo < 2 or hi < lo:
        raise BadRange(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    flags = bytearray([1]) * (hi + 1)
    flags[0] = flags[1] = 0
    for q in range(2, isqrt(hi) + 1):
        if flags[q]:
            flags[q * q :: q] = bytearray(len(range(q * q, hi + 1, q)))
    return [n for n in range(lo, hi + 1) if flags[n]]


def parse_range(text: str) -> Tuple[int, int]:
    """Parse ``lo..hi`` (or a single integer) into an inclusive interval."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            bounds = int(lo), int(hi)
        else:
            bounds = int(text), int(text)
    except ValueError:
        raise BadRange(f"cannot parse prime range {text!r}; expected LO..HI") from None
    if bounds[0] < 2 or bounds[1] < bounds[0]:
        raise BadRange(f"need 2 <= lo <= hi, got {text!r}")
    return bounds


@dataclass
class RunConfig:
    prime_range: Tuple[int, int] = DEFAULT_RANGE
    check_ids: Optional[List[str]] = None  # None means all
    format: str = "text"
    jobs: int = 1
    oracle: bool = False
    timing: bool = False
    mutate_seed: Optional[int] = None

    def __post_init__(self):
        lo, hi = self.prime_range
        if lo > hi:
            raise BadRange(f"range start {lo} exceeds end {hi}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if self.format not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")


def _value(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


def record(result: CheckResult, timing: bool) -> dict:
    return {
        "check_id": result.check_id,
        "prime": result.prime,
        "modulus": result.modulus,
        "lhs": _value(result.lhs),
        "rhs": _value(result.rhs),
        "pass": result.passed,
        "oracle_checked": result.oracle_checked,
        "elapsed_ms": round(result.elapsed * 1000, 3) if timing else None,
    }


class Sink:
    """Serializes records to one stream in arrival order."""

    def __init__(self, fmt: str, out: TextIO, timing: bool):
        self.fmt, self.out, self.timing = fmt, out, timing
        self.writer = None
        if fmt == "csv":
            self.writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator="\r\n")
            self.writer.writeheader()

    def emit(self, result: CheckResult) -> None:
        rec = record(result, self.timing)
        if self.fmt == "json":
            if result.error:
                rec["error"] = result.error
            self.out.write(json.dumps(rec) + "\n")
        elif self.fmt == "csv":
            row = dict(rec)
            row["pass"] = "true" if rec["pass"] else "false"
            row["oracle_checked"] = "true" if rec["oracle_checked"] else "false"
            self.writer.writerow({k: "" if v is None else v for k, v in row.items()})
        else:
            self._text(result, rec)
        self.out.flush()

    def _text(self, result: CheckResult, rec: dict) -> None:
        status = "PASS" if result.passed else "FAIL"
        mod = "exact" if result.modulus is None else f"mod {result.modulus}"
        line = f"p={result.prime:<5} {result.check_id:<19} {status}  lhs={rec['lhs']} rhs={rec['rhs']} ({mod})"
        if result.oracle_checked:
            line += " [oracle]"
        if self.timing:
            line += f" {rec['elapsed_ms']}ms"
        self.out.write(line + "\n")
        if result.error:
            self.out.write(f"    error: {result.error}\n")
        for pt in result.failed_parts:
            self.out.write(f"    failed: {pt.label}: {_value(pt.lhs)} != {_value(pt.rhs)}\n")


def execute(config: RunConfig, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        primes = sieve_primes(*config.prime_range)
        tasks, skipped = plan(primes, config.check_ids)
    except (CongruenceError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2

    mutate = None
    if config.mutate_seed is not None:
        if not tasks:
            err.write("error: nothing to mutate, no applicable (check, prime) pairs\n")
            return 2
        mutate = random.Random(config.mutate_seed).choice(tasks)
        err.write(f"mutation: perturbing {mutate[0]} at p={mutate[1]} by +1\n")

    sink = Sink(config.format, out, config.timing)
    passed = failed = 0
    for chunk in iter_registry(tasks, jobs=config.jobs, oracle=config.oracle, mutate=mutate):
        for result in chunk:
            sink.emit(result)
            if result.passed:
                passed += 1
            else:
                failed += 1

    summary = f"{passed} passed, {failed} failed, {len(skipped)} skipped (outside applicability range)"
    if config.format == "text":
        out.write(summary + "\n")
    else:
        err.write(summary + "\n")
    return 0 if failed == 0 else 1


def list_checks(out: TextIO) -> int:
    for d in REGISTRY.values():
        mod = "exact" if d.modulus_exponent is None else f"p^{d.modulus_exponent}"
        bound = f"p >= {d.min_prime}" + (f", p <= {d.max_prime}" if d.max_prime else "")
        out.write(f"{d.id:<19} {mod:<6} {bound:<17} {d.anchor}\n")
    return 0


def _parse_exponents(text: str) -> Tuple[int, ...]:
    return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x)


def evaluate(op: str, args: Sequence[str], oracle: bool, out: TextIO) -> int:
    """Ad-hoc access to single operations; prints one result line."""
    ints = lambda xs: [int(x) for x in xs]  # noqa: E731
    if op == "harmonic":
        vals = ints(args)
        n, m, rest = vals[0], (vals[1:2] or [1])[0], vals[2:]
        value = harmonic_exact(n, m)
        if rest:
            p, e = (rest + [1])[:2]
            out.write(f"{reduce(value, (p, e)).residue}\n")
        else:
            out.write(f"{value}\n")
    elif op == "bernoulli":
        k, *rest = ints(args)
        if rest:
            p, e = (rest + [1])[:2]
            out.write(f"{bernoulli_mod(k, prime_context(p, e)).residue}\n")
        else:
            out.write(f"{bernoulli_exact(k)}\n")
    elif op == "mhs":
        spec = _parse_exponents(args[0])
        n, *rest = ints(args[1:])
        if rest:
            p, e = (rest + [1])[:2]
            fast = mhs(spec, n, (p, e)).residue
            out.write(f"{fast}\n")
            if oracle:
                brute = reduce(mhs_bruteforce(spec, n), (p, e)).residue
                out.write(f"oracle: {brute} ({'agrees' if brute == fast else 'DISAGREES'})\n")
                return 0 if brute == fast else 1
        else:
            out.write(f"{mhs_bruteforce(spec, n)}\n")
    elif op == "hernandez":
        n, m = ints(args)
        lhs, rhs = hernandez_sides(n, m)
        out.write(f"lhs={lhs} rhs={rhs} pass={lhs == rhs}\n")
        return 0 if lhs == rhs else 1
    else:
        raise ValueError(f"unknown op {op!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-congruences",
        description="Verify congruences for harmonic sums modulo prime powers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered checks over a range of primes")
    v.add_argument("--primes", default="7..499", help="inclusive range LO..HI (default 7..499)")
    v.add_argument("--check", default="all", help="comma-separated check ids, or 'all'")
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
    v.add_argument("--oracle", action="store_true", help="add brute-force cross-checks where bounded")
    v.add_argument("--timing", action="store_true", help="report elapsed_ms per record")
    v.add_argument(
        "--mutate",
        nargs="?",
        const=0,
        type=int,
        default=None,
        metavar="SEED",
        help="perturb one randomly chosen check by +1 (harness self-test)",
    )

    sub.add_parser("list-checks", help="print the check registry")

    e = sub.add_parser("eval", help="evaluate a single operation")
    e.add_argument("--op", required=True, choices=("harmonic", "bernoulli", "mhs", "hernandez"))
    e.add_argument(
        "--args",
        nargs="+",
        required=True,
        help="harmonic N M [P [E]] | bernoulli K [P [E]] | mhs S1,S2,.. N [P [E]] | hernandez N M",
    )
    e.add_argument("--oracle", action="store_true", help="for mhs mod p: compare with enumeration")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-checks":
        return list_checks(sys.stdout)
    if args.command == "eval":
        try:
            return evaluate(args.op, args.args, args.oracle, sys.stdout)
        except (CongruenceError, ValueError, IndexError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    try:
        ids = [s.strip() for s in args.check.split(",") if s.strip()]
        config = RunConfig(
            prime_range=parse_range(args.primes),
            check_ids=None if ids in ([], ["all"]) else resolve(ids),
            format=args.format,
            jobs=args.jobs if args.jobs is not None else default_jobs(),
            oracle=args.oracle,
            timing=args.timing,
            mutate_seed=args.mutate,
        )
    except (CongruenceError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        return execute(config)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
