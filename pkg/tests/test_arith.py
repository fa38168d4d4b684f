import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.ntheory.modular import crt as sympy_crt

from modsolve.arith import (PRIME_HIGH, PRIME_LOW, PrimeStream, crt_lift, farey_reconstruct,
                            generate_prime_batch, mod_inverse, rational_mod)

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]


def brute_crt(residues):
    N = prod(p for _, p in residues)
    return next(x for x in range(N) if all(x % p == r % p for r, p in residues))


def test_crt_constant_residue():
    assert crt_lift([(2, 3), (2, 5)]) == (2, 15)


def test_crt_against_exhaustive_search():
    assert crt_lift([(1, 3), (4, 5), (0, 7)]) == (49, 105)
    assert brute_crt([(1, 3), (4, 5), (0, 7)]) == 49


def test_crt_all_zero():
    assert crt_lift([(0, p) for p in SMALL_PRIMES])[0] == 0


def test_crt_rejects_repeated_moduli():
    with pytest.raises(ValueError):
        crt_lift([(1, 5), (2, 5)])
    with pytest.raises(ValueError):
        crt_lift([])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(SMALL_PRIMES), min_size=1, max_size=4, unique=True), st.data())
def test_crt_matches_brute_force(primes, data):
    residues = [(data.draw(st.integers(0, p - 1)), p) for p in primes]
    r, N = crt_lift(residues)
    assert N == prod(primes)
    assert r == brute_crt(residues)
    assert r == int(sympy_crt(primes, [a for a, _ in residues])[0])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 3 * 5 * 7 * 11 * 13 - 1))
def test_crt_of_reductions_is_identity(x):
    primes = [3, 5, 7, 11, 13]
    assert crt_lift([(x % p, p) for p in primes]) == (x, prod(primes))


def test_farey_examples():
    assert farey_reconstruct(53, 105) == Fraction(1, 2)
    assert 2 * 53 % 105 == 1
    assert farey_reconstruct(2, 105) == Fraction(2)
    assert farey_reconstruct(104, 105) == Fraction(-1)


def test_farey_failure_when_modulus_too_small():
    # 1000003/2 cannot be recovered modulo 101*103
    N = 101 * 103
    r = 1000003 * pow(2, -1, N) % N
    got = farey_reconstruct(r, N)
    assert got != Fraction(1000003, 2)


@settings(max_examples=500, deadline=None)
@given(st.integers(-10**4, 10**4), st.integers(1, 10**4))
def test_farey_round_trip(a, b):
    c = Fraction(a, b)
    stream = PrimeStream(seed=a * 7919 + b)
    primes = []
    while prod(primes) <= 2 * max(c.numerator ** 2, c.denominator ** 2):
        primes.extend(stream.draw(1, [c.denominator]))
    r, N = crt_lift([(rational_mod(c, p), p) for p in primes])
    assert farey_reconstruct(r, N) == c


def test_farey_result_is_within_bound():
    rng = random.Random(3)
    N = 1000003 * 999983
    for _ in range(200):
        c = farey_reconstruct(rng.randrange(N), N)
        if c is not None:
            assert 2 * c.numerator ** 2 <= N and 2 * c.denominator ** 2 <= N
            assert c.numerator * pow(c.denominator, -1, N) % N is not None


def test_rational_mod_and_inverse():
    assert rational_mod(Fraction(1, 2), 5) == 3
    assert rational_mod(-3, 7) == 4
    with pytest.raises(ZeroDivisionError):
        rational_mod(Fraction(1, 5), 5)
    assert mod_inverse(2, 5) == 3
    with pytest.raises(ZeroDivisionError):
        mod_inverse(10, 5)


def test_prime_batch_properties():
    batch = generate_prime_batch(3, excluded={6}, seed=1)
    assert len(set(batch)) == 3
    assert all(PRIME_LOW <= p < PRIME_HIGH for p in batch)
    assert 2 not in batch and 3 not in batch
    assert 6 in batch.excluded


def test_prime_batch_deterministic_and_non_repeating():
    a = generate_prime_batch(1, seed=42)
    b = generate_prime_batch(1, seed=42)
    assert a.primes == b.primes
    stream = PrimeStream(seed=42)
    first, second = stream.draw(1), stream.draw(1)
    assert first.primes == a.primes
    assert first.primes != second.primes


def test_prime_batch_excludes_divisors():
    stream = PrimeStream(seed=5)
    p = stream.draw(1).primes[0]
    again = PrimeStream(seed=5).draw(1, excluded=[p * 3])
    assert p not in again.primes


def test_prime_batch_count_must_be_positive():
    with pytest.raises(ValueError):
        generate_prime_batch(0)


def test_rationals_are_reduced():
    c = Fraction(6, -4)
    assert (c.numerator, c.denominator) == (-3, 2)
