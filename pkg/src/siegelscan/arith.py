"""Prime generation and the arithmetic of (Z/qZ)* for odd primes q.

Everything here works on exact integers.  Array code uses int64 and relies on
q <= 2**31 so that a product of two residues fits in 63 bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidModulusError, MismatchError, ResourceLimitError

MAX_MODULUS = 2**31
SEGMENT_ODDS = 1 << 20


def _base_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit by a plain sieve (limit is at most ~46341 here)."""
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    return primes[primes > 2]


def iter_primes(lo: int, hi: int, segment_odds: int = SEGMENT_ODDS) -> Iterator[int]:
    """Yield the primes in [lo, hi] in ascending order.

    Odd-only segmented sieve; each segment holds ``segment_odds`` flags, so
    memory stays bounded whatever the range.
    """
    if lo < 2:
        raise ValueError(f"lo must be >= 2, got {lo}")
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if lo <= 2 <= hi:
        yield 2
    base = _base_primes(math.isqrt(hi))
    start = max(lo, 3) | 1
    while start <= hi:
        # segment covers the odd numbers start, start+2, ..., start+2*(n-1)
        n = min(segment_odds, (hi - start) // 2 + 1)
        end = start + 2 * (n - 1)
        flags = np.ones(n, dtype=bool)
        for p in base[base * base <= end]:
            p = int(p)
            first = max(p * p, -(-start // p) * p)
            if first % 2 == 0:
                first += p
            if first > end:
                continue
            flags[(first - start) // 2 :: p] = False
        for idx in np.flatnonzero(flags):
            yield start + 2 * int(idx)
        start = end + 2


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending (empty if there are none)."""
    if hi < lo:
        return []
    return list(iter_primes(lo, hi))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.4e14."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(q: int) -> int:
    """Return ``q`` as an int if it is an odd prime below 2**31, else raise."""
    if isinstance(q, bool) or int(q) != q:
        raise InvalidModulusError(f"modulus must be an integer, got {q!r}")
    q = int(q)
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise InvalidModulusError(f"{q} is not an odd prime")
    if q >= MAX_MODULUS:
        raise InvalidModulusError(f"{q} exceeds the supported bound 2**31")
    return q


def pow_mod(base: int, exp: int, q: int) -> int:
    if q < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base % q, exp, q)


def pow_mod_array(base: np.ndarray, exp: int, q: int) -> np.ndarray:
    """Elementwise base**exp mod q by square-and-multiply on int64 arrays."""
    if q > MAX_MODULUS:
        raise InvalidModulusError("array exponentiation needs q <= 2**31")
    b = np.asarray(base, dtype=np.int64) % q
    result = np.ones_like(b)
    while exp:
        if exp & 1:
            result = result * b % q
        b = b * b % q
        exp >>= 1
    return result % q


def factorize(n: int) -> list[int]:
    """Prime factors of n with multiplicity, ascending (trial division)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors = []
    while n % 2 == 0:
        factors.append(2)
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors.append(p)
            n //= p
        p += 2
    if n > 1:
        factors.append(n)
    return factors


def find_primitive_root(q: int) -> int:
    """Smallest generator of (Z/qZ)* for the odd prime q."""
    q = check_odd_prime(q)
    cofactors = [(q - 1) // p for p in sorted(set(factorize(q - 1)))]
    for g in range(2, q):
        if all(pow(g, e, q) != 1 for e in cofactors):
            return g
    raise InvalidModulusError(f"no primitive root found for {q}")  # unreachable for primes


def legendre_symbol(a: int, q: int) -> int:
    """(a | q) by Euler's criterion."""
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


def legendre_array(a: np.ndarray, q: int) -> np.ndarray:
    """Vectorised Legendre symbols as int64 values in {-1, 0, 1}."""
    r = pow_mod_array(a, (q - 1) // 2, q)
    return np.where(r == q - 1, -1, r)


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime with the data needed to index its characters.

    ``even`` is the parity of the quadratic character, which is even exactly
    when q = 1 mod 4.  ``g`` is the smallest primitive root.
    """

    q: int
    g: int
    even: bool
    qbar: int
    j_quad: int

    @classmethod
    def for_prime(cls, q: int, g: int | None = None) -> "PrimeContext":
        q = check_odd_prime(q)
        if g is None:
            g = find_primitive_root(q)
        elif not is_primitive_root(g, q):
            raise InvalidModulusError(f"{g} is not a primitive root of {q}")
        half = (q - 1) // 2
        return cls(q=q, g=g, even=(q % 4 == 1), qbar=half, j_quad=half)

    @property
    def parity(self) -> str:
        return "even" if self.even else "odd"


def is_primitive_root(g: int, q: int) -> bool:
    if g % q == 0:
        return False
    return all(pow(g, (q - 1) // p, q) != 1 for p in set(factorize(q - 1)))


@dataclass(frozen=True)
class PowerSequence:
    """a_k = g**k mod q for k = 0..q-2, a permutation of 1..q-1."""

    q: int
    values: np.ndarray

    def __len__(self):
        return len(self.values)


def build_power_sequence(ctx: PrimeContext) -> PowerSequence:
    """Tabulate the powers of the primitive root.

    The first block of ``m ~ sqrt(q)`` powers is built by repeated
    multiplication; every later block is that block times g**(i*m), which
    keeps the work in numpy.
    """
    q, g = ctx.q, ctx.g
    n = q - 1
    m = max(1, math.isqrt(n))
    rows = -(-n // m)
    try:
        head = np.empty(m, dtype=np.int64)
        starts = np.empty(rows, dtype=np.int64)
    except MemoryError as exc:
        raise ResourceLimitError(f"cannot allocate the power table for q={q}") from exc
    x = 1
    for k in range(m):
        head[k] = x
        x = x * g % q
    step, x = x, 1  # step = g**m
    for i in range(rows):
        starts[i] = x
        x = x * step % q
    try:
        table = (starts[:, None] * head[None, :]) % q
    except MemoryError as exc:
        raise ResourceLimitError(f"cannot allocate the power table for q={q}") from exc
    return PowerSequence(q=q, values=table.reshape(-1)[:n])


def check_same_prime(ctx: PrimeContext, seq: PowerSequence) -> None:
    if ctx.q != seq.q:
        raise MismatchError(f"context is for q={ctx.q} but sequence is for q={seq.q}")
