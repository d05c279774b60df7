import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from siegelscan.arith import (
    PrimeContext,
    build_power_sequence,
    factorize,
    find_primitive_root,
    is_prime,
    iter_primes,
    legendre_array,
    legendre_symbol,
    pow_mod,
    pow_mod_array,
    primes_in_range,
)
from siegelscan.errors import InvalidModulusError


def trial_division_primes(lo, hi):
    return [n for n in range(max(lo, 2), hi + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]


def multiplicative_order(g, q):
    x, k = g % q, 1
    while x != 1:
        x = x * g % q
        k += 1
    return k


def test_primes_small():
    assert primes_in_range(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert primes_in_range(8, 10) == []
    assert primes_in_range(2, 2) == [2]


@pytest.mark.parametrize("lo,hi", [(2, 1000), (3, 5000), (990, 1010), (49, 49), (97, 97)])
def test_primes_against_trial_division(lo, hi):
    assert primes_in_range(lo, hi) == trial_division_primes(lo, hi)


def test_segments_join_cleanly():
    # tiny segments force many boundaries
    assert list(iter_primes(3, 3000, segment_odds=7)) == trial_division_primes(3, 3000)


def test_odd_prime_count_to_1e7():
    # pi(10^7) = 664579, minus the prime 2
    assert sum(1 for _ in iter_primes(3, 10**7)) == 664578


def test_pow_mod_examples():
    assert pow_mod(2, 10, 1000) == 24
    assert pow_mod(5, 0, 7) == 1
    x = 1
    for _ in range(6):
        x = x * 3 % 7
    assert pow_mod(3, 6, 7) == x == 1


@given(st.integers(0, 2**31), st.integers(0, 10**6), st.integers(2, 2**31))
def test_pow_mod_matches_builtin(b, e, m):
    assert pow_mod(b, e, m) == pow(b, e, m)


def test_pow_mod_array():
    q = 2_147_483_647
    base = np.array([2, 3, q - 1, 123456789], dtype=np.int64)
    got = pow_mod_array(base, q - 2, q)
    assert got.tolist() == [pow(int(b), q - 2, q) for b in base]


@pytest.mark.parametrize("n", [1, 2, 12, 97, 9999990, 9999991, 2**20, 3 * 5 * 7 * 11 * 13 * 17])
def test_factorize_remultiplies(n):
    f = factorize(n)
    assert math.prod(f) == n
    assert all(is_prime(p) for p in f)
    assert f == sorted(f)


def test_factorize_examples():
    assert factorize(12) == [2, 2, 3]
    assert factorize(1) == []


def test_is_prime_against_sieve():
    ps = set(primes_in_range(2, 20000))
    assert all(is_prime(n) == (n in ps) for n in range(20001))


def test_primitive_root_examples():
    assert find_primitive_root(3) == 2
    # exhaustive: 2 has order 3 mod 7, 3 has order 6
    orders = {g: multiplicative_order(g, 7) for g in range(2, 7)}
    assert min(g for g, o in orders.items() if o == 6) == find_primitive_root(7) == 3


def test_primitive_root_large():
    q = 9999991
    g = find_primitive_root(q)
    assert pow(g, q - 1, q) == 1
    for p in set(factorize(q - 1)):
        assert pow(g, (q - 1) // p, q) != 1


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101, 997, 7919])
def test_primitive_root_is_smallest(q):
    g = find_primitive_root(q)
    assert multiplicative_order(g, q) == q - 1
    assert all(multiplicative_order(h, q) < q - 1 for h in range(2, g))


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 561, -7])
def test_invalid_modulus(bad):
    with pytest.raises(InvalidModulusError):
        find_primitive_root(bad)
    with pytest.raises(InvalidModulusError):
        PrimeContext.for_prime(bad)


def test_legendre_examples():
    assert legendre_symbol(1, 13) == 1
    assert legendre_symbol(13 * 5, 13) == 0
    assert legendre_symbol(3, 7) == -1  # 3 is a primitive root of 7


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101, 103, 1009])
def test_legendre_counts_squares(q):
    squares = {a * a % q for a in range(1, q)}
    a = np.arange(q * 2)
    got = legendre_array(a, q)
    want = [0 if x % q == 0 else (1 if x % q in squares else -1) for x in range(q * 2)]
    assert got.tolist() == want
    assert [legendre_symbol(x, q) for x in range(q * 2)] == want


def test_power_sequence_small():
    ctx = PrimeContext.for_prime(7)
    assert ctx.g == 3
    assert build_power_sequence(ctx).values.tolist() == [pow(3, k, 7) for k in range(6)] == [1, 3, 2, 6, 4, 5]
    assert build_power_sequence(PrimeContext.for_prime(3)).values.tolist() == [1, 2]


def test_context_fields():
    for q in (3, 5, 13, 19, 9999991):
        ctx = PrimeContext.for_prime(q)
        assert ctx.qbar == ctx.j_quad == (q - 1) // 2
        assert ctx.even == (q % 4 == 1) == (legendre_symbol(q - 1, q) == 1)


def check_power_sequence(q):
    ctx = PrimeContext.for_prime(q)
    a = build_power_sequence(ctx).values
    half = ctx.qbar
    assert len(a) == q - 1
    assert a[0] == 1
    assert np.array_equal(np.sort(a), np.arange(1, q))
    assert np.array_equal(a[1:], a[:-1] * ctx.g % q)
    assert np.array_equal(a[half:] + a[:half], np.full(half, q))
    signs = np.where(np.arange(q - 1) % 2 == 0, 1, -1)
    assert np.array_equal(legendre_array(a, q), signs)


def random_primes(n, hi, seed):
    ps = primes_in_range(3, hi)
    return random.Random(seed).sample(ps, n)


@pytest.mark.parametrize("q", random_primes(40, 10**5, 1))
def test_power_sequence_properties(q):
    check_power_sequence(q)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10**6).filter(is_prime))
def test_power_sequence_hypothesis(q):
    check_power_sequence(q)


def test_given_root_is_checked():
    assert PrimeContext.for_prime(7, g=5).g == 5
    with pytest.raises(InvalidModulusError):
        PrimeContext.for_prime(7, g=2)
