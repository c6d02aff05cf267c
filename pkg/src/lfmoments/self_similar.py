"""The limiting valuation density c_p and its local geometry.

c_p(x) = x^{-1} * sum over all integers ell of p^{-ell} * ||p^ell x||^2,
where ||y|| is the distance from y to the nearest integer.  For rational x
the two tails are exact geometric series and the middle is a finite exact
sum, so c_p(x) is an explicit rational number.  The function satisfies
c_p(px) = c_p(x), c_2 is identically 1, and as p grows c_p(x) approaches
||x||/x pointwise.

Local behavior at a rational point a/b (p not dividing b) is controlled by
the absolute least residues of a, ap, ap^2, ... modulo b: with r the
multiplicative order of p mod b and S the sum of those r residues, the graph
near a/b is self-similar when S = 0, has a cusp when S != 0 and b = 2, and
has a vertical tangent otherwise.

Large valuations track this density: v_p(g_{k,U}) ~ k*c_p(x) and
v_p(g_{k,O}) ~ v_p(g_{k,Sp}) ~ (k/2)*c_p(x) along k = floor(p^j x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

import mpmath

from .errors import DomainError, PreconditionError
from .exact_moments import SymmetryClass
from .numeric_core import abs_least_residue
from .padic_valuation import valuation
from .precision import RealApprox


@dataclass(frozen=True)
class SelfSimilar:
    period: int


@dataclass(frozen=True)
class Cusp:
    pass


@dataclass(frozen=True)
class VerticalTangent:
    pass


PointClass = Union[SelfSimilar, Cusp, VerticalTangent]


def _as_positive_fraction(x) -> Fraction:
    fx = Fraction(x)
    if fx <= 0:
        raise DomainError(f"density is defined for x > 0, got {x!r}")
    return fx


def _nearest_int_distance(y: Fraction) -> Fraction:
    f = y - math.floor(y)
    return min(f, 1 - f)


def _multiplicative_order(p: int, b: int) -> int:
    if b == 1:
        return 1
    r = 1
    t = p % b
    while t != 1:
        t = (t * p) % b
        r += 1
        if r > b:  # unreachable when gcd(p, b) = 1
            raise PreconditionError(f"{p} is not invertible modulo {b}")
    return r


def density_exact(p: int, x) -> Fraction:
    """c_p(x) as an exact rational, for rational x > 0.

    Reduces via c_p(x) = c_p(px) until the denominator is coprime to p,
    then sums: the small-argument side is a geometric series, the
    large-argument side is periodic in the residues of numerator*p^ell
    and sums to a finite rational combination of geometric series.
    """
    if p < 2:
        raise DomainError(f"p must be a prime >= 2, got {p}")
    fx = _as_positive_fraction(x)
    while fx.denominator % p == 0:
        fx *= p
    a, b = fx.numerator, fx.denominator

    # ell <= -1: terms p^m * ||x / p^m||^2 for m >= 1; once x/p^m <= 1/2
    # they telescope to an exact geometric tail.
    total = Fraction(0)
    m = 1
    while fx / p**m > Fraction(1, 2):
        d = _nearest_int_distance(fx / p**m)
        total += p**m * d * d
        m += 1
    total += fx * fx * Fraction(p, (p - 1) * p**m)

    # ell >= 0: ||p^ell x|| = |[[a p^ell mod b]]| / b, purely periodic with
    # period the multiplicative order of p mod b.
    r = _multiplicative_order(p, b)
    bb = b * b
    per = Fraction(0)
    t = a % b
    for i in range(r):
        res = abs_least_residue(t, b)
        per += Fraction(res * res, bb * p**i)
        t = (t * p) % b
    total += per * Fraction(p**r, p**r - 1)

    return total / fx


def density_numeric(p: int, x, eps: float = 1e-9) -> RealApprox:
    """c_p(x) by truncated summation, independent of density_exact.

    Floating-point x is treated as the exact binary rational it stores.
    The negative side is finite-plus-exact-tail; the positive side is
    truncated once its worst-case tail (||.|| <= 1/2) drops below eps/2.
    """
    if p < 2:
        raise DomainError(f"p must be a prime >= 2, got {p}")
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    fx = _as_positive_fraction(x)

    total = Fraction(0)
    m = 1
    while fx / p**m > Fraction(1, 2):
        d = _nearest_int_distance(fx / p**m)
        total += p**m * d * d
        m += 1
    total += fx * fx * Fraction(p, (p - 1) * p**m)

    # positive side: stop when (1/4) * sum_{l>L} p^-l < eps/2 * x
    tail_budget = Fraction(eps) / 2 * fx
    ell = 0
    while True:
        d = _nearest_int_distance(fx * p**ell)
        total += d * d / Fraction(p**ell)
        ell += 1
        worst_tail = Fraction(1, 4) * Fraction(p, (p - 1) * p**ell)
        if worst_tail < tail_budget:
            break

    value = total / fx
    with mpmath.workprec(128):
        approx = mpmath.mpf(value.numerator) / value.denominator
    return RealApprox(value=approx, precision_bits=128, err_estimate=float(eps))


def classify_point(p: int, a: int, b: int) -> PointClass:
    """Local class of the graph of c_p at x = a/b.

    a/b is reduced first; if p still divides the denominator the caller
    must rescale by a power of p (the graph repeats under x -> px).
    """
    if p < 2:
        raise DomainError(f"p must be a prime >= 2, got {p}")
    if a < 1 or b < 1:
        raise DomainError("need a positive rational a/b")
    fx = Fraction(a, b)
    if fx.denominator % p == 0:
        raise PreconditionError(
            f"denominator of {fx} shares a factor with p = {p}; rescale by p first"
        )
    a, b = fx.numerator, fx.denominator
    r = _multiplicative_order(p, b)
    s = 0
    t = a % b
    for _ in range(r):
        s += abs_least_residue(t, b)
        t = (t * p) % b
    if s == 0:
        return SelfSimilar(period=r)
    if b == 2:
        return Cusp()
    return VerticalTangent()


def valuation_density_ratios(p: int, x, j: int) -> dict:
    """Ratios of actual valuations to the density prediction at k = floor(p^j x).

    Returns {"k": k, "U": v/(k c), "O": v/((k/2) c), "Sp": v/((k/2) c)}.
    The ratios tend to 1 as j grows (error O(log k)/k relative).
    """
    fx = _as_positive_fraction(x)
    k = math.floor(fx * p**j)
    if k < 1:
        raise PreconditionError(f"p^j*x = {float(fx) * p ** j} too small, need k >= 1")
    c = density_exact(p, x)
    out = {"k": k}
    full = Fraction(valuation(SymmetryClass.U, p, k)) / (k * c)
    out["U"] = float(full)
    for sym in (SymmetryClass.O, SymmetryClass.Sp):
        v = valuation(sym, p, k)
        out[sym.value] = float(Fraction(2 * v) / (k * c))
    return out


def sample_density(
    p: int, x_min, x_max, n: int, eps: float = 1e-9
) -> List[Tuple[float, float]]:
    """n uniformly spaced samples of c_p over [x_min, x_max]."""
    if n < 2:
        raise DomainError(f"need at least 2 sample points, got {n}")
    lo = _as_positive_fraction(x_min)
    hi = _as_positive_fraction(x_max)
    if hi <= lo:
        raise DomainError("need x_max > x_min > 0")
    step = (hi - lo) / (n - 1)
    out = []
    for i in range(n):
        xi = lo + i * step
        out.append((float(xi), float(density_numeric(p, xi, eps).value)))
    return out
