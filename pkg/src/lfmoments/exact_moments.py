"""Exact integer moment constants for the three classical symmetry types.

For a symmetry type (unitary U, orthogonal O, symplectic Sp) and a positive
integer k, the leading-order moment constant is a positive integer given by
a closed product over factorials / odd double factorials.  The first few
values per class are

    U:  1, 2, 42, 24024, ...
    O:  1, 2, 8, 128, ...
    Sp: 1, 2, 16, 768, ...

The log-power B(k) (k^2, k(k-1)/2 or k(k+1)/2) is the exponent of the
logarithm in the associated mean value, and the constants are normalized so
the mean value carries a 1/Gamma(1+B(k)) alongside.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod

from .errors import DomainError, IntegralityViolation
from .numeric_core import FactoredInteger, factorial, odd_double_factorial, primes_up_to


class SymmetryClass(enum.Enum):
    U = "U"
    O = "O"
    Sp = "Sp"

    @classmethod
    def parse(cls, label: str) -> "SymmetryClass":
        key = label.strip().lower()
        table = {"u": cls.U, "o": cls.O, "sp": cls.Sp}
        if key not in table:
            raise DomainError(f"unknown symmetry class {label!r} (want U, O or Sp)")
        return table[key]


U = SymmetryClass.U
O = SymmetryClass.O
Sp = SymmetryClass.Sp


def log_power(sym: SymmetryClass, k):
    """B(k): the exponent of log in the mean value.

    Exact for int and Fraction inputs, generic arithmetic otherwise
    (floats, mpf).
    """
    if isinstance(k, int):
        if sym is SymmetryClass.U:
            return k * k
        if sym is SymmetryClass.O:
            return k * (k - 1) // 2
        return k * (k + 1) // 2
    if sym is SymmetryClass.U:
        return k * k
    if sym is SymmetryClass.O:
        return k * (k - 1) / 2
    return k * (k + 1) / 2


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"moment order must be a positive integer, got {k!r}")


def moment_constant(sym: SymmetryClass, k: int) -> int:
    """The exact integer moment constant, via odd-double-factorial products.

    Raises IntegralityViolation if the defining exact division leaves a
    remainder (it never should; the check guards the implementation).
    """
    _check_k(k)
    b = log_power(sym, k)
    if sym is SymmetryClass.U:
        numer = factorial(b) * 2**k
        denom = 2 ** (k * k) * prod(
            odd_double_factorial(j) * odd_double_factorial(j + 1) for j in range(1, k)
        )
    elif sym is SymmetryClass.O:
        numer = factorial(b) * 2 ** (k - 1)
        denom = prod(odd_double_factorial(j) for j in range(1, k))
    else:
        numer = factorial(b)
        denom = prod(odd_double_factorial(j) for j in range(1, k + 1))
    g, rem = divmod(numer, denom)
    if rem:
        raise IntegralityViolation(
            f"moment constant for {sym.value}, k={k} is not integral"
        )
    return g


def moment_constant_factorial_form(sym: SymmetryClass, k: int) -> int:
    """The same integer via the equivalent all-factorial products.

    Kept as an independent route; tests require it to agree with
    moment_constant everywhere.
    """
    _check_k(k)
    b = log_power(sym, k)
    if sym is SymmetryClass.U:
        numer = factorial(b) * prod(factorial(j) for j in range(1, k)) ** 2
        denom = prod(factorial(j) for j in range(1, 2 * k))
    elif sym is SymmetryClass.O:
        numer = factorial(b) * 2 ** (b + k - 1) * prod(
            factorial(j) for j in range(1, k)
        )
        denom = prod(factorial(2 * j) for j in range(1, k))
    else:
        numer = factorial(b) * 2**b * prod(factorial(j) for j in range(1, k + 1))
        denom = prod(factorial(2 * j) for j in range(1, k + 1))
    g, rem = divmod(numer, denom)
    if rem:
        raise IntegralityViolation(
            f"factorial-form moment constant for {sym.value}, k={k} is not integral"
        )
    return g


def two_adic_valuation(n: int) -> int:
    """Exponent of 2 in n (n >= 1)."""
    if n < 1:
        raise DomainError("two_adic_valuation needs a positive integer")
    return (n & -n).bit_length() - 1


def moment_factored(sym: SymmetryClass, k: int) -> FactoredInteger:
    """Exact prime factorization of the moment constant.

    Odd primes go through the closed valuation formulas (fast even for
    large k); the power of 2 comes from exact division of the integer
    itself.  Zero exponents are dropped.
    """
    _check_k(k)
    from .padic_valuation import valuation  # local import to avoid a cycle

    g = moment_constant(sym, k)
    exps = {}
    v2 = two_adic_valuation(g)
    if v2:
        exps[2] = v2
    # no odd prime beyond B(k) divides the constant (B_Sp(k) = B_O(k+1))
    bound = log_power(sym, k)
    for p in primes_up_to(bound):
        if p == 2:
            continue
        v = valuation(sym, p, k)
        if v:
            exps[p] = v
    return FactoredInteger(exps)


@dataclass
class MomentConstant:
    """Bundled record: class, order, value, factorization and log-power."""

    sym: SymmetryClass
    k: int
    value: int
    factored: FactoredInteger
    log_power: int


def moment_record(sym: SymmetryClass, k: int) -> MomentConstant:
    return MomentConstant(
        sym=sym,
        k=k,
        value=moment_constant(sym, k),
        factored=moment_factored(sym, k),
        log_power=log_power(sym, k),
    )
