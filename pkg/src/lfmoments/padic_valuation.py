"""Closed-form p-adic valuations of the exact moment constants.

For an odd prime p the valuation of the U / O constants is a finite sum of
per-level terms (level ell corresponds to the power q = p^ell); each term is
a nonnegative integer built from floor divisions.  The symplectic case
reduces to the orthogonal one through the exact shift identity
g_{k+1,O} = 2^k * g_{k,Sp}, and p = 2 is handled by exact division of the
integer constant itself.
"""

from __future__ import annotations

from .errors import DomainError, IntegralityViolation, OutOfRegime, UnsupportedClass
from .exact_moments import SymmetryClass, log_power, moment_constant, two_adic_valuation


def _check_odd_prime(p: int) -> None:
    # Primality itself is a documented precondition (checked at the CLI
    # boundary); here we only reject what would silently corrupt results.
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise UnsupportedClass(f"closed valuation terms need an odd prime, got {p}")


def valuation_term(sym: SymmetryClass, p: int, ell: int, k: int) -> int:
    """The level-ell summand of v_p for the U or O constant (odd p only).

    Every term is a nonnegative integer; the sum over ell >= 1 (finitely
    many terms are nonzero) is the full valuation.
    """
    if sym is SymmetryClass.Sp:
        raise UnsupportedClass("symplectic valuations reduce to the O case at k+1")
    if sym not in (SymmetryClass.U, SymmetryClass.O):
        raise UnsupportedClass(f"no closed valuation term for {sym!r}")
    if p == 2:
        raise UnsupportedClass("p = 2 is handled by exact division, not a closed term")
    _check_odd_prime(p)
    if ell < 1:
        raise DomainError(f"level must be >= 1, got {ell}")
    if k < 1:
        raise DomainError(f"order must be >= 1, got {k}")
    q = p**ell
    if sym is SymmetryClass.U:
        a = (k - 1) // q
        b = (2 * k - 1) // q
        doubled = (
            2 * (k * k // q)
            + 2 * (2 * k - q) * a
            + (q - 4 * k) * b
            - 2 * q * a * a
            + q * b * b
        )
    else:
        m = (((2 * k - 3) // q) + 1) // 2  # half-floor bracket of (2k-3)/q
        doubled = 2 * (k * (k - 1) // 2 // q) - (2 * k - 1) * m + q * m * m
    if doubled % 2:
        raise IntegralityViolation(
            f"half-integer valuation term at {sym.value}, p={p}, ell={ell}, k={k}"
        )
    return doubled // 2


def valuation(sym: SymmetryClass, p: int, k: int) -> int:
    """v_p of the exact moment constant.

    Odd primes: sum of closed per-level terms, truncated at the first level
    with p^ell > k^2 (all later terms vanish).  p = 2: exact division.
    Sp: the O valuation at k+1, minus k when p = 2.
    """
    if k < 1:
        raise DomainError(f"order must be >= 1, got {k}")
    if not isinstance(p, int) or p < 2:
        raise DomainError(f"p must be a prime >= 2, got {p!r}")
    if sym is SymmetryClass.Sp:
        v = valuation(SymmetryClass.O, p, k + 1)
        return v - k if p == 2 else v
    if p == 2:
        return two_adic_valuation(moment_constant(sym, k))
    total = 0
    q = p
    ell = 1
    ksq = k * k
    while q <= ksq:
        total += valuation_term(sym, p, ell, k)
        q *= p
        ell += 1
    return total


def zero_valuation_window(sym: SymmetryClass, p: int, k: int) -> bool:
    """Whether v_p vanishes, by the window criterion (regime p^2 > B(k) > p).

    U window:  k < p < k + sqrt(p)
    O window:  k - sqrt(k+p) < p < k + sqrt(k+p)

    Outside the regime (p >= B(k), where the valuation is trivially zero, or
    p^2 <= B(k), where it is always positive) raises OutOfRegime.
    """
    if sym is SymmetryClass.Sp:
        raise UnsupportedClass(
            "window criterion covers U and O; use the O window at k+1 for Sp"
        )
    if sym not in (SymmetryClass.U, SymmetryClass.O):
        raise UnsupportedClass(f"no window criterion for {sym!r}")
    if k < 1:
        raise DomainError(f"order must be >= 1, got {k}")
    b = log_power(sym, k)
    if p >= b:
        raise OutOfRegime(f"p={p} >= B(k)={b}: valuation is trivially zero there")
    if p * p <= b:
        raise OutOfRegime(f"p={p} has p^2 <= B(k)={b}: valuation is always positive")
    d = p - k
    if sym is SymmetryClass.U:
        return p > k and d * d < p
    return d * d < k + p
