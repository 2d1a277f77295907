from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_congruences import (
    ContextMismatch,
    InsufficientValuation,
    LocalResidue,
    NonInvertible,
    NonInvertibleDenominator,
    UndefinedValuation,
    lift_divide,
    lr_add,
    lr_inv,
    lr_mul,
    lr_neg,
    prime_context,
    reduce,
    valuation,
)

PRIMES = [2, 3, 5, 7, 11, 13, 101, 499]


def ext_euclid_inverse(a, m):
    # independent of pow(a, -1, m)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1:
        q = r0 // r1
        r0, r1, s0, s1 = r1, r0 - q * r1, s1, s0 - q * s1
    assert r0 == 1
    return s0 % m


def factor_valuation(q, p):
    # count p in numerator minus p in denominator by trial division
    def count(n):
        c = 0
        while n and n % p == 0:
            n //= p
            c += 1
        return c

    return count(abs(q.numerator)) - count(q.denominator)


def R(r, p, e):
    return LocalResidue(r, p, e)


def test_reduce_half_mod_7():
    assert reduce(Fraction(1, 2), prime_context(7, 1)) == R(4, 7, 1)


def test_reduce_h6_mod_49():
    h6 = sum(Fraction(1, k) for k in range(1, 7))
    assert h6 == Fraction(49, 20)
    assert reduce(h6, prime_context(7, 2)).residue == 0


def test_reduce_pole():
    with pytest.raises(NonInvertibleDenominator):
        reduce(Fraction(1, 7), prime_context(7, 1))


def test_reduce_large_denominator():
    ctx = prime_context(7, 3)
    q = Fraction(5, 1000)
    assert reduce(q, ctx).residue * 200 % 343 == 1


def test_ring_ops_examples():
    assert lr_add(R(4, 7, 1), R(3, 7, 1)) == R(0, 7, 1)
    assert lr_mul(R(4, 7, 1), R(2, 7, 1)) == R(1, 7, 1)
    assert lr_neg(R(0, 7, 1)) == R(0, 7, 1)
    assert lr_neg(R(0, 11, 3)) == R(0, 11, 3)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        lr_add(R(1, 7, 1), R(1, 7, 2))
    with pytest.raises(ContextMismatch):
        lr_mul(R(1, 7, 1), R(1, 11, 1))


def test_inverse_examples():
    assert lr_inv(R(4, 7, 1)) == R(2, 7, 1)
    assert ext_euclid_inverse(3, 49) == 33
    assert lr_inv(R(3, 7, 2)) == R(33, 7, 2)
    with pytest.raises(NonInvertible):
        lr_inv(R(7, 7, 2))


def test_valuation_examples():
    assert valuation(Fraction(49, 20), 7) == factor_valuation(Fraction(49, 20), 7) == 2
    assert valuation(Fraction(1, 7), 7) == -1
    assert valuation(Fraction(5, 3), 7) == 0
    with pytest.raises(UndefinedValuation):
        valuation(Fraction(0), 7)


def test_lift_divide_examples():
    assert lift_divide(R(0, 7, 3), 1) == R(0, 7, 2)
    assert lift_divide(R(98, 7, 3), 1) == R(14, 7, 2)
    with pytest.raises(InsufficientValuation):
        lift_divide(R(5, 7, 2), 1)


def test_residue_must_be_canonical():
    with pytest.raises(ValueError):
        LocalResidue(49, 7, 2)
    with pytest.raises(ValueError):
        LocalResidue(1, 9, 1)


@pytest.mark.parametrize("p,e", [(7, 1), (7, 4), (13, 2), (499, 3)])
def test_context_inverse_table(p, e):
    ctx = prime_context(p, e)
    M = p**e
    for k in range(1, p):
        assert k * ctx.inverses[k] % M == 1
        assert ctx.inverses[k] == ext_euclid_inverse(k, M)


@pytest.mark.parametrize("p", [7, 11, 31])
def test_inverse_round_trip(p):
    ctx = prime_context(p, 2)
    for k in range(1, p):
        assert lr_mul(reduce(Fraction(1, k), ctx), reduce(Fraction(k), ctx)).residue == 1


contexts = st.tuples(st.sampled_from(PRIMES), st.integers(1, 4))


@st.composite
def residue_triples(draw):
    p, e = draw(contexts)
    M = p**e
    a, b, c = (draw(st.integers(0, M - 1)) for _ in range(3))
    return R(a, p, e), R(b, p, e), R(c, p, e)


@given(residue_triples())
def test_ring_laws(abc):
    a, b, c = abc
    assert lr_add(a, b) == lr_add(b, a)
    assert lr_mul(a, b) == lr_mul(b, a)
    assert lr_add(lr_add(a, b), c) == lr_add(a, lr_add(b, c))
    assert lr_mul(lr_mul(a, b), c) == lr_mul(a, lr_mul(b, c))
    assert lr_mul(a, lr_add(b, c)) == lr_add(lr_mul(a, b), lr_mul(a, c))
    assert lr_add(a, lr_neg(a)).residue == 0


@st.composite
def local_rationals(draw):
    p, e = draw(contexts)
    def one():
        num = draw(st.integers(-10**6, 10**6))
        den = draw(st.integers(1, 10**6).filter(lambda d: d % p))
        return Fraction(num, den)
    return (p, e), one(), one()


@given(local_rationals())
def test_reduce_is_homomorphism(data):
    (p, e), q1, q2 = data
    ctx = prime_context(p, e)
    assert reduce(q1 + q2, ctx) == lr_add(reduce(q1, ctx), reduce(q2, ctx))
    assert reduce(q1 * q2, ctx) == lr_mul(reduce(q1, ctx), reduce(q2, ctx))
    assert reduce(-q1, ctx) == lr_neg(reduce(q1, ctx))


@given(st.sampled_from([3, 5, 7, 11]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_lift_divide_round_trip(p, e, t, u):
    M = p ** (e + t)
    a = R(u * p**t % M, p, e + t)
    q = lift_divide(a, t)
    assert q.exponent == e
    assert q.residue * p**t % M == a.residue


@given(st.integers(-10**9, 10**9).filter(bool), st.integers(1, 10**9), st.sampled_from(PRIMES))
@settings(max_examples=200)
def test_valuation_matches_factor_oracle(n, d, p):
    q = Fraction(n, d)
    assert valuation(q, p) == factor_valuation(q, p)
