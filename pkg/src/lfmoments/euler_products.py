"""Arithmetic factors: Euler products over primes.

Two products are implemented: the one attached to the zeta family (whose
local factors are built from the generalized divisor coefficients d_k)
and the one attached to the quadratic-character symplectic family.  Both
are truncated at a prime cutoff with an observable error estimate.

``assemble_mean_value`` combines an arithmetic factor with the exact
moment constant into the leading-term shape
coefficient * (log Q^A)^{B(k)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DivergentInner, DomainError
from .exact_moments import SymmetryClass, log_power, moment_constant
from .numeric_core import factorial, primes_up_to
from .precision import RealApprox, default_precision

__all__ = [
    "divisor_coefficient",
    "zeta_local_factor",
    "zeta_arithmetic_factor",
    "sp_local_factor",
    "sp_quadratic_arithmetic_factor",
    "FamilyDescriptor",
    "MeanValueShape",
    "assemble_mean_value",
]

_GUARD_BITS = 48
_INNER_BUDGET = 100_000


def _resolve_bits(precision_bits) -> int:
    return default_precision() if precision_bits is None else int(precision_bits)


def divisor_coefficient(k, j: int):
    """The multiplicative coefficient d_k at a prime power with exponent j.

    Equals gamma(k+j)/(gamma(k) j!); the prime itself never enters.  For
    integer k >= 1 this is the exact binomial C(k+j-1, j); for other real
    k > -1/2 the rising product (k)(k+1)...(k+j-1)/j! is evaluated in
    floating point.
    """
    if j < 0:
        raise DomainError("prime-power exponent j must be nonnegative")
    if isinstance(k, int):
        if k >= 1:
            return math.comb(k + j - 1, j)
        if k == 0:
            return 1 if j == 0 else 0
    kf = float(k)
    if kf <= -0.5:
        raise DomainError("divisor coefficients are used only for k > -1/2")
    value = 1.0
    for i in range(j):
        value *= (kf + i) / (i + 1)
    return value


def _zeta_local_value(k_mp: mp.mpf, p: int, inner_eps: mp.mpf) -> mp.mpf:
    """(1 - 1/p)^{k^2} * sum_j d_k(p^j)^2 / p^j at working precision."""
    x = 1 / mp.mpf(p)
    d = mp.mpf(1)
    xp = mp.mpf(1)
    total = mp.mpf(1)
    for j in range(1, _INNER_BUDGET + 1):
        d = d * (k_mp + j - 1) / j
        xp *= x
        term = d * d * xp
        total += term
        if abs(term) < inner_eps:
            return mp.power(1 - x, k_mp * k_mp) * total
    raise DivergentInner(
        f"local sum at p={p} did not fall below {mp.nstr(inner_eps, 3)} "
        f"within {_INNER_BUDGET} terms"
    )


def zeta_local_factor(k, p: int, inner_eps=None, precision_bits=None) -> RealApprox:
    """A single local factor of the zeta-family arithmetic constant."""
    bits = _resolve_bits(precision_bits)
    if p < 2:
        raise DomainError("p must be a prime (>= 2)")
    with mp.workprec(bits + _GUARD_BITS):
        k_mp = mp.mpf(k)
        if k_mp <= mp.mpf("-0.5"):
            raise DomainError("the product is defined only for k > -1/2")
        eps = mp.mpf(2) ** (-(bits + 16)) if inner_eps is None else mp.mpf(inner_eps)
        value = _zeta_local_value(k_mp, p, eps)
        err = abs(value) * mp.mpf(2) ** (8 - bits)
        return RealApprox(value=+value, precision_bits=bits, err_estimate=float(err))


def _tail_coefficient(k_mp: mp.mpf) -> mp.mpf:
    # log of a local factor is -k^2 (k-1)^2 / (4 p^2) + O(p^-3).
    return abs(k_mp * k_mp * (k_mp - 1) ** 2 / 4)


def zeta_arithmetic_factor(
    k, prime_cutoff: int = 100_000, inner_eps=None, precision_bits=None
) -> RealApprox:
    """Arithmetic constant of the zeta family, truncated over p <= cutoff.

    The local factor at p is (1 - 1/p)^{k^2} sum_j d_k(p^j)^2 p^{-j}; the
    inner sum stops once a term drops below ``inner_eps``.  The reported
    err_estimate is the sum of the truncated-tail bound (the local-factor
    logs decay like k^2(k-1)^2/(4p^2), summed with the exact prime zeta
    tail) and the working-precision floor.
    """
    bits = _resolve_bits(precision_bits)
    if prime_cutoff < 100:
        raise DomainError("prime_cutoff must be at least 100")
    with mp.workprec(bits + _GUARD_BITS):
        k_mp = mp.mpf(k)
        if k_mp <= mp.mpf("-0.5"):
            raise DomainError("the product is defined only for k > -1/2")
        eps = mp.mpf(2) ** (-(bits + 16)) if inner_eps is None else mp.mpf(inner_eps)
        product = mp.mpf(1)
        inv_square_sum = mp.mpf(0)
        for p in primes_up_to(prime_cutoff):
            product *= _zeta_local_value(k_mp, p, eps)
            inv_square_sum += 1 / mp.mpf(p * p)
        tail = mp.primezeta(2) - inv_square_sum
        err = abs(product) * (
            _tail_coefficient(k_mp) * tail + mp.mpf(2) ** (8 - bits)
        )
        return RealApprox(value=+product, precision_bits=bits, err_estimate=float(err))


def _sp_even_part_poly(k: int):
    """Coefficients (in y = 1/p) of the even part of (1-x)^-k averaged with
    (1+x)^-k, times (1-y)^k: the polynomial sum_m C(k, 2m) y^m."""
    return [math.comb(k, 2 * m) for m in range(k // 2 + 1)]


def sp_local_factor(k: int, p: int) -> Fraction:
    """Exact local factor of the symplectic quadratic-family product.

    The average over the two square-root signs is even in p^{-1/2}, hence
    rational in 1/p; integer k therefore admits exact evaluation.  At
    k = 1 this simplifies to 1 - 1/(p^2 + p).
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError("exact local factors need a positive integer k")
    if p < 2:
        raise DomainError("p must be a prime (>= 2)")
    y = Fraction(1, p)
    even_avg = sum(c * y**m for m, c in enumerate(_sp_even_part_poly(k)))
    avg = even_avg / (1 - y) ** k
    b_exp = k * (k + 1) // 2
    return (1 - y) ** b_exp * (avg + y) / (1 + y)


def sp_quadratic_arithmetic_factor(
    k: int, prime_cutoff: int = 100_000, precision_bits=None
) -> RealApprox:
    """Arithmetic constant of the quadratic symplectic family.

    Product over p <= cutoff of
    (1-1/p)^{k(k+1)/2} * (((1+p^{-1/2})^{-k} + (1-p^{-1/2})^{-k})/2 + 1/p)
    / (1 + 1/p).  The err_estimate compares against the half-cutoff
    partial product, the same scale a cutoff-doubling test would see.
    """
    bits = _resolve_bits(precision_bits)
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    if prime_cutoff < 100:
        raise DomainError("prime_cutoff must be at least 100")
    with mp.workprec(bits + _GUARD_BITS):
        b_exp = k * (k + 1) // 2
        product = mp.mpf(1)
        half_checkpoint = None
        half_bound = prime_cutoff // 2
        previous = 2
        for p in primes_up_to(prime_cutoff):
            if half_checkpoint is None and p > half_bound:
                half_checkpoint = product
            x = 1 / mp.mpf(p)
            root = mp.sqrt(x)
            avg = (mp.power(1 + root, -k) + mp.power(1 - root, -k)) / 2
            product *= mp.power(1 - x, b_exp) * (avg + x) / (1 + x)
            previous = p
        if half_checkpoint is None:
            half_checkpoint = product
        err = abs(product - half_checkpoint) + abs(product) * mp.mpf(2) ** (8 - bits)
        return RealApprox(value=+product, precision_bits=bits, err_estimate=float(err))


@dataclass(frozen=True)
class FamilyDescriptor:
    """An L-function family: symmetry class, conductor exponent, name.

    ``conductor_exponent`` is the degree to which the ordering parameter
    enters the functional equation; it only scales the logarithm inside
    the mean-value shape.  The arithmetic factor is supplied by the
    caller, since it is family-specific beyond these fields.
    """

    sym: SymmetryClass
    conductor_exponent: Fraction
    label: str

    def __post_init__(self):
        object.__setattr__(
            self, "conductor_exponent", Fraction(self.conductor_exponent)
        )
        if self.conductor_exponent <= 0:
            raise DomainError("conductor exponent must be positive")


@dataclass(frozen=True)
class MeanValueShape:
    """Leading term coefficient * (A log Q)^{log_power} of a mean value."""

    coefficient: RealApprox
    log_power: int
    log_argument_exponent: Fraction


def assemble_mean_value(family: FamilyDescriptor, k: int, ak) -> MeanValueShape:
    """Leading-term shape of the k-th moment of a family.

    coefficient = g_k * a_k / B(k)! with the exact integer g_k; the
    caller-provided arithmetic factor may be a RealApprox, a Fraction, or
    a float.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    g = moment_constant(family.sym, k)
    b_exp = log_power(family.sym, k)
    bits = ak.precision_bits if isinstance(ak, RealApprox) else default_precision()
    with mp.workprec(bits + _GUARD_BITS):
        if isinstance(ak, RealApprox):
            ak_value = ak.value
            ak_err = mp.mpf(ak.err_estimate)
        else:
            if isinstance(ak, Fraction):
                ak_value = mp.mpf(ak.numerator) / mp.mpf(ak.denominator)
            else:
                ak_value = mp.mpf(ak)
            ak_err = abs(ak_value) * mp.mpf(2) ** (8 - bits)
        scale = mp.mpf(g) / mp.mpf(factorial(b_exp))
        coeff = RealApprox(
            value=scale * ak_value,
            precision_bits=bits,
            err_estimate=float(scale * ak_err),
        )
    return MeanValueShape(
        coefficient=coeff,
        log_power=b_exp,
        log_argument_exponent=family.conductor_exponent,
    )
