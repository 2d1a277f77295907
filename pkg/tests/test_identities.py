from fractions import Fraction
from math import comb

import pytest

from harmonic_congruences import (
    OracleBoundExceeded,
    OutOfApplicabilityRange,
    bernoulli_exact,
    bernoulli_mod,
    corollary_1_2_check,
    harmonic_exact,
    hernandez_check,
    identity_21_check,
    lemma_2_3_check,
    lemma_2_4_check,
    lemma_2_6_check,
    lemma_2_8_check,
    lemma_2_9_check,
    mhs_bruteforce,
    reduce,
    remarks_check,
    theorem_1_1_check,
)
from harmonic_congruences.identities import bernoulli_convolution

PRIME_CHECKS = [
    theorem_1_1_check,
    corollary_1_2_check,
    lemma_2_3_check,
    lemma_2_4_check,
    lemma_2_6_check,
    lemma_2_8_check,
    lemma_2_9_check,
    remarks_check,
]


def exact_sums(p):
    """The two central sums over k = 1..p-1 as exact fractions."""
    h = Fraction(0)
    a = b = Fraction(0)
    for k in range(1, p):
        h += Fraction(1, k)
        a += h / (k * k)
        b += h * h / k
    return a, b


def test_hernandez_examples():
    for m in range(1, 5):
        r = hernandez_check(1, m)
        assert r.passed and r.lhs == r.rhs == 1
    assert hernandez_check(3, 1).lhs == Fraction(3) - Fraction(3, 2) + Fraction(1, 3) == Fraction(11, 6)
    assert hernandez_check(2, 2).lhs == 2 - (Fraction(1, 2) + Fraction(1, 4)) == Fraction(5, 4)


def test_hernandez_bounds():
    with pytest.raises(OracleBoundExceeded):
        hernandez_check(26, 1)
    with pytest.raises(OracleBoundExceeded):
        hernandez_check(3, 5)
    with pytest.raises(OutOfApplicabilityRange):
        hernandez_check(0, 1)


def test_hernandez_m1_alternating_binomial():
    for n in range(1, 26):
        direct = sum(Fraction(comb(n, k) * (-1) ** (k - 1), k) for k in range(1, n + 1))
        assert direct == harmonic_exact(n) == hernandez_check(n, 1).lhs


def test_identity_21_examples():
    r = identity_21_check(1)
    assert r.lhs == r.rhs == 0
    r = identity_21_check(2)
    assert r.lhs == Fraction(9, 8) - Fraction(3, 8) == Fraction(3, 4)
    assert r.rhs == (Fraction(27, 8) - Fraction(9, 8)) / 3 == Fraction(3, 4)
    assert identity_21_check(50).passed


def test_theorem_1_1_members_at_7():
    a, b = exact_sums(7)
    r = theorem_1_1_check(7)
    assert r.passed and r.modulus == 49
    assert len(r.parts) == 6
    expected = reduce(a, (7, 2)).residue
    assert reduce(b, (7, 2)).residue == expected
    assert reduce(Fraction(3, 14) * harmonic_exact(6, 2), (7, 2)).residue == expected
    assert reduce(Fraction(-3, 49) * harmonic_exact(6), (7, 2)).residue == expected
    assert {pt.lhs for pt in r.parts} == {expected}


@pytest.mark.parametrize("check", PRIME_CHECKS)
@pytest.mark.parametrize("p", [7, 11, 13, 499])
def test_prime_checks_pass(check, p):
    r = check(p)
    assert r.passed, r.failed_parts


@pytest.mark.parametrize("check", PRIME_CHECKS)
@pytest.mark.parametrize("bad", [5, 6, 9])
def test_prime_checks_out_of_range(check, bad):
    with pytest.raises(OutOfApplicabilityRange):
        check(bad)


def test_corollary_at_7():
    a, b = exact_sums(7)
    assert reduce(a, (7, 1)).residue == reduce(b, (7, 1)).residue == 3
    assert bernoulli_mod(4, (7, 1)).residue == 3
    r = corollary_1_2_check(7)
    assert [pt.lhs for pt in r.parts if pt.modulus == 7] == [3, 3]


@pytest.mark.parametrize("p", [11, 13, 17])
def test_corollary_mod_p2_from_exact(p):
    a, b = exact_sums(p)
    bern = 3 * (bernoulli_exact(2 * p - 4) / (2 * p - 4) - 2 * bernoulli_exact(p - 3) / (p - 3))
    assert reduce(a, (p, 2)) == reduce(b, (p, 2)) == reduce(bern, (p, 2))


def test_remarks_at_7():
    conv = bernoulli_convolution(4)
    assert conv == 2 * bernoulli_exact(0) * bernoulli_exact(4) + bernoulli_exact(2) ** 2
    assert conv == Fraction(-7, 180)
    a, b = exact_sums(7)
    assert reduce(b - a, (7, 3)).residue == reduce(Fraction(2 * 49, 5) * Fraction(1, 6), (7, 3)).residue
    assert reduce(harmonic_exact(6, 3), (7, 3)).residue == reduce(Fraction(-6 * 49, 5) / 6, (7, 3)).residue
    r = remarks_check(7, oracle=True)
    assert r.passed and r.oracle_checked


def test_lemma_2_4_against_exact():
    p = 13
    lhs = sum(harmonic_exact(k) * harmonic_exact(k, 2) / k for k in range(1, p))
    rhs = mhs_bruteforce((1, 2, 1), p - 1) + mhs_bruteforce((2, 1, 1), p - 1)
    assert reduce(lhs, (p, 1)) == reduce(rhs, (p, 1))


@pytest.mark.parametrize("p", [7, 11, 101, 199])
def test_chain_coherence(p):
    r = theorem_1_1_check(p)
    assert r.passed
    assert r.parts[0].lhs % p == bernoulli_mod(p - 3, (p, 1)).residue


@pytest.mark.parametrize("p", [7, 23, 211])
def test_cubic_sum_vanishes_two_ways(p):
    l23 = {pt.label: pt for pt in lemma_2_3_check(p).parts}
    l29 = {pt.label: pt for pt in lemma_2_9_check(p).parts}
    proportional = l23["sum H_k^3/k = 3/2 sum H_k^2/k^2 mod p"]
    vanishing = l29["sum H_k^3/k = 0 mod p"]
    assert proportional.lhs == vanishing.lhs == 0
    assert l29["sum H_k^2/k^2 = 0 mod p"].lhs == 0


@pytest.mark.parametrize("check", PRIME_CHECKS)
def test_perturbation_is_detected(check):
    r = check(11, perturb=True)
    assert not r.passed
    assert r.lhs != r.rhs
    assert 0 <= r.lhs < r.modulus


@pytest.mark.parametrize("check", PRIME_CHECKS)
def test_oracle_mode(check):
    r = check(13, oracle=True)
    assert r.passed and r.oracle_checked
