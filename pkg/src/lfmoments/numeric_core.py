"""Exact integer and rational primitives used by everything else.

All arithmetic here is exact: Python ints and fractions.Fraction only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Dict, Iterator, List, Union

from .errors import DomainError

Rational = Union[int, Fraction]


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


def odd_double_factorial(j: int) -> int:
    """Product of the odd integers 1*3*...*(2j-1); empty product for j=0."""
    if j < 0:
        raise DomainError(f"odd_double_factorial needs j >= 0, got {j}")
    return math.prod(range(1, 2 * j, 2))


def half_floor_bracket(x: Rational) -> int:
    """floor((floor(x) + 1) / 2).

    For x >= 0 this counts the odd integers in [1, x]; it is the variant
    floor that shows up in valuation formulas for odd double factorials.
    Defined for every rational x.
    """
    fl = x if isinstance(x, int) else math.floor(x)
    return (fl + 1) // 2


def abs_least_residue(n: int, b: int) -> int:
    """The representative of n mod b lying in (-b/2, b/2]."""
    if b < 1:
        raise DomainError(f"modulus must be positive, got {b}")
    r = n % b
    if 2 * r > b:
        r -= b
    return r


def primes_up_to(limit: int) -> List[int]:
    """All primes <= limit, by a bytearray sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray((limit - p * p) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for command-line inputs."""
    if n < 2:
        return False
    for p in prime_stream():
        if p * p > n:
            return True
        if n % p == 0:
            return n == p


def prime_stream() -> Iterator[int]:
    """Unbounded ascending primes (postponed incremental sieve)."""
    yield 2
    yield 3
    composites: Dict[int, int] = {}
    base = prime_stream()
    next(base)
    p = next(base)  # 3
    psq = p * p
    for c in count(5, 2):
        if c in composites:
            step = composites.pop(c)
        elif c < psq:
            yield c
            continue
        else:  # c == psq
            step = 2 * p
            p = next(base)
            psq = p * p
        d = c + step
        while d in composites:
            d += step
        composites[d] = step


@dataclass
class FactoredInteger:
    """A positive integer held as {prime: exponent}; exponents >= 1."""

    exponents: Dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        out = 1
        for p, e in self.exponents.items():
            out *= p**e
        return out

    def largest_prime(self) -> int:
        """Largest prime factor; 1 for the empty factorization."""
        return max(self.exponents) if self.exponents else 1

    def __getitem__(self, p: int) -> int:
        return self.exponents.get(p, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredInteger):
            return self.exponents == other.exponents
        return NotImplemented


def factor_integer(n: int) -> FactoredInteger:
    """Full factorization by trial division over an unbounded prime stream.

    Intended for smooth integers (everything factored in this package has
    only small prime factors); it is not a general-purpose factoring engine.
    """
    if n < 1:
        raise DomainError(f"can only factor positive integers, got {n}")
    exps: Dict[int, int] = {}
    remaining = n
    for p in prime_stream():
        if p * p > remaining:
            break
        if remaining % p == 0:
            e = 0
            while remaining % p == 0:
                remaining //= p
                e += 1
            exps[p] = e
    if remaining > 1:
        exps[remaining] = exps.get(remaining, 0) + 1
    return FactoredInteger(dict(sorted(exps.items())))
