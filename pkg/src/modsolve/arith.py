"""Exact integer, rational and prime-field helpers.

Rationals are plain :class:`fractions.Fraction` values (always stored in
lowest terms with a positive denominator).  Prime-field elements are plain
``int`` residues in ``[0, p)``; the modulus travels with the polynomial ring.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Optional, Sequence

from sympy import isprime

__all__ = [
    "PrimeBatch",
    "PrimeStream",
    "crt_lift",
    "farey_reconstruct",
    "generate_prime_batch",
    "mod_inverse",
    "rational_mod",
]

#: Primes are drawn from ``[PRIME_LOW, PRIME_HIGH)``, just below 2**30.
PRIME_HIGH = 1 << 30
PRIME_LOW = PRIME_HIGH - (1 << 26)


def mod_inverse(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p``; raises ZeroDivisionError if none exists."""
    try:
        return pow(a, -1, p)
    except ValueError:
        raise ZeroDivisionError(f"{a} is not invertible modulo {p}") from None


def rational_mod(c, p: int) -> int:
    """Image of the rational ``c`` in Z/pZ (``a/b -> a * b^-1 mod p``).

    Raises ZeroDivisionError when ``p`` divides the denominator.
    """
    c = Fraction(c)
    if c.denominator == 1:
        return c.numerator % p
    if c.denominator % p == 0:
        raise ZeroDivisionError(f"denominator of {c} is divisible by {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def crt_lift(residues: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``[(r_i, p_i), ...]`` into ``(r, N)`` with ``r = r_i mod p_i``.

    ``N`` is the product of the moduli and ``0 <= r < N``.  The moduli must be
    pairwise distinct primes (pairwise coprime is what is actually checked).
    """
    if not residues:
        raise ValueError("crt_lift needs at least one residue")
    moduli = [p for _, p in residues]
    if len(set(moduli)) != len(moduli):
        raise ValueError(f"duplicate moduli in {moduli}")
    r, n = 0, 1
    for a, p in residues:
        # Garner-style incremental combination: r + n*k = a (mod p)
        if gcd(n, p) != 1:
            raise ValueError(f"modulus {p} is not coprime to the others")
        k = (a - r) * pow(n, -1, p) % p
        r += n * k
        n *= p
    return r % n, n


def farey_reconstruct(r: int, n: int) -> Optional[Fraction]:
    """Rational ``a/b`` with ``a = r*b (mod n)`` and ``|a|, b <= sqrt(n/2)``.

    Returns ``None`` when no such fraction exists, which callers read as
    "the modulus is not large enough yet".  The fraction, when it exists,
    is unique.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    r %= n
    bound = isqrt(n // 2)
    r0, s0, r1, s1 = n, 0, r, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(s1, n) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


@dataclass(frozen=True)
class PrimeBatch:
    primes: tuple[int, ...]
    excluded: frozenset = frozenset()

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("primes in a batch must be distinct")

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    @property
    def modulus(self) -> int:
        return prod(self.primes)


@dataclass
class PrimeStream:
    """Reproducible stream of word-sized primes that never repeats itself."""

    seed: Optional[int] = None
    issued: set = field(default_factory=set)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def draw(self, count: int, excluded: Iterable[int] = ()) -> PrimeBatch:
        if count < 1:
            raise ValueError("count must be at least 1")
        excluded = frozenset(abs(int(e)) for e in excluded)
        out = []
        while len(out) < count:
            candidate = self._rng.randrange(PRIME_LOW, PRIME_HIGH) | 1
            if candidate in self.issued or not isprime(candidate):
                continue
            if any(e % candidate == 0 for e in excluded if e):
                continue
            self.issued.add(candidate)
            out.append(candidate)
        return PrimeBatch(tuple(out), excluded)


def generate_prime_batch(count: int, excluded: Iterable[int] = (),
                         seed: Optional[int] = None,
                         stream: Optional[PrimeStream] = None) -> PrimeBatch:
    """Draw ``count`` fresh primes; pass ``stream`` to continue a sequence."""
    if stream is None:
        stream = PrimeStream(seed)
    return stream.draw(count, excluded)
