"""Moment constants at non-integer degree.

The exact integers of :mod:`lfmoments.exact_moments` interpolate to an
analytic function of the degree parameter.  This module evaluates that
function two independent ways:

* as the large-matrix limit of finite products of Gamma-function ratios,
  accelerated by Richardson extrapolation (``moment_by_limit``), and
* in closed form through the Barnes G-function (``moment_closed_form``).

It also houses the supporting pieces those routes need: a first-party
Barnes G implementation, the bundle of analytic constants (gamma,
zeta'(0), zeta'(-1), zeta'(2)), the half-integer unitary constant, a
numeric pole-order probe, and the large-degree asymptotic expansions of
``log g_k`` together with the partial-sum expansions they rest on.

Conventions fixed here (and validated by the integer cross-checks in the
test suite):

* the double gamma function is the reciprocal of Barnes G, so
  ``double_gamma(1) = 1`` and ``double_gamma(z+1) = double_gamma(z)/gamma(z)``;
* reported moment values include the ``Gamma(1 + B(lambda))`` factor, so
  they agree with the exact integers at integer degree.  The bare ratio
  (which is what has poles of the advertised orders) is exposed
  separately as ``moment_ratio_closed_form``.

The orthogonal-class limit product carries an extra factor 1/2 relative
to a naive transcription; without it the product reproduces twice every
integer moment.  The closed form independently produces the same halved
normalization, so the two routes agree everywhere, not just at integers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError, NoConvergence, PoleError
from .exact_moments import SymmetryClass
from .precision import RealApprox, default_precision

__all__ = [
    "FundamentalConstants",
    "constants",
    "barnes_g",
    "double_gamma",
    "moment_ratio_closed_form",
    "moment_closed_form",
    "moment_by_limit",
    "half_moment_unitary",
    "pole_order",
    "log_moment_asymptotic",
    "log_sum_asymptotics",
    "SUM_KINDS",
]

_GUARD_BITS = 48
_POLE_RADIUS = mp.mpf("1e-8")
_LADDER_START = 32
_LADDER_MAX_N = 1 << 20


def _resolve_bits(precision_bits) -> int:
    bits = default_precision() if precision_bits is None else int(precision_bits)
    if bits < 64:
        raise DomainError(f"need at least 64 bits of precision, got {bits}")
    return bits


def _to_mpf(x) -> mp.mpf:
    # Fractions convert exactly; everything else goes through mpmathify.
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    if isinstance(x, RealApprox):
        return x.value
    value = mp.mpmathify(x)
    if isinstance(value, mp.mpc):
        raise DomainError("complex degree parameters are not supported here")
    return value


def _approx(value: mp.mpf, bits: int, err: mp.mpf | None = None) -> RealApprox:
    if err is None:
        err = abs(value) * mp.mpf(2) ** (8 - bits)
    try:
        err_f = float(err)
    except OverflowError:
        err_f = float("inf")
    # no unary plus here: it would re-round value at the ambient global
    # precision, which is 53 bits whenever the caller sits outside workprec
    return RealApprox(value=value, precision_bits=bits, err_estimate=err_f)


# ---------------------------------------------------------------------------
# fundamental constants


@dataclass(frozen=True)
class FundamentalConstants:
    """Analytic constants shared by the closed forms and asymptotics."""

    euler_gamma: RealApprox
    zeta_prime_0: RealApprox
    zeta_prime_minus1: RealApprox
    zeta_prime_2: RealApprox
    log_2: RealApprox
    log_2pi: RealApprox
    precision_bits: int


@functools.lru_cache(maxsize=None)
def _constants_cached(bits: int) -> FundamentalConstants:
    with mp.workprec(bits + _GUARD_BITS):
        log_2 = mp.log(2)
        log_2pi = mp.log(2 * mp.pi)
        zp0 = -log_2pi / 2
        # Glaisher-Kinkelin relation: zeta'(-1) = 1/12 - log A.
        zpm1 = mp.mpf(1) / 12 - mp.log(mp.glaisher)
        zp2 = mp.zeta(2, derivative=1)
        gamma = +mp.euler
        wrap = lambda v: _approx(v, bits)
        return FundamentalConstants(
            euler_gamma=wrap(gamma),
            zeta_prime_0=wrap(zp0),
            zeta_prime_minus1=wrap(zpm1),
            zeta_prime_2=wrap(zp2),
            log_2=wrap(log_2),
            log_2pi=wrap(log_2pi),
            precision_bits=bits,
        )


def constants(precision_bits=None) -> FundamentalConstants:
    """Constant bundle at the requested precision (cached, immutable)."""
    return _constants_cached(_resolve_bits(precision_bits))


# ---------------------------------------------------------------------------
# Barnes G


def _log_barnes_g_large(z: mp.mpf, zpm1: mp.mpf) -> mp.mpf:
    """log G(z) for large positive z via the asymptotic series.

    Written in terms of y = z - 1:
    log G(y+1) = zeta'(-1) + (y/2) log 2pi + (y^2/2 - 1/12) log y
                 - (3/4) y^2 + sum_{k>=1} B_{2k+2} / (4k(k+1) y^{2k}).
    """
    y = z - 1
    log_y = mp.log(y)
    total = (
        zpm1
        + y / 2 * mp.log(2 * mp.pi)
        + (y * y / 2 - mp.mpf(1) / 12) * log_y
        - 3 * y * y / 4
    )
    y2 = y * y
    power = y2
    tol = mp.mpf(2) ** (-(mp.mp.prec + 8))
    scale = max(abs(total), mp.mpf(1))
    prev_size = mp.inf
    for k in range(1, 400):
        term = mp.bernoulli(2 * k + 2) / (4 * k * (k + 1) * power)
        size = abs(term)
        if size > prev_size:
            # asymptotic series started diverging; stop at the floor
            break
        total += term
        if size < tol * scale:
            break
        prev_size = size
        power *= y2
    return total


def _barnes_g_raw(z: mp.mpf, zpm1: mp.mpf) -> mp.mpf:
    """Barnes G at working precision; caller guards nonpositive integers."""
    threshold = mp.mp.prec / 8 + 17
    if threshold < 33:
        threshold = 33
    if z >= threshold:
        return mp.exp(_log_barnes_g_large(z, zpm1))
    # G(z) = G(z + n) / prod_{i=0}^{n-1} Gamma(z + i)
    n = int(mp.ceil(threshold - z))
    large = mp.exp(_log_barnes_g_large(z + n, zpm1))
    denom = mp.mpf(1)
    for i in range(n):
        denom *= mp.gamma(z + i)
    return large / denom


def _check_not_nonpositive_integer(z: mp.mpf, what: str) -> None:
    if z <= 0 and mp.isint(z):
        raise PoleError(f"{what} is not defined at the nonpositive integer {z}")


def barnes_g(z, precision_bits=None) -> RealApprox:
    """Barnes G-function, normalized by G(1) = G(2) = 1, G(z+1) = Gamma(z) G(z).

    Computed by upward recursion into the asymptotic regime plus the
    log-G series.  Nonpositive integers are zeros of G; they are rejected
    so that the reciprocal is well defined everywhere we accept input.
    """
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        zv = _to_mpf(z)
        _check_not_nonpositive_integer(zv, "barnes_g")
        zpm1 = constants(bits).zeta_prime_minus1.value
        value = _barnes_g_raw(zv, zpm1)
        return _approx(value, bits)


def double_gamma(z, precision_bits=None) -> RealApprox:
    """Reciprocal Barnes G; the double gamma normalization used throughout."""
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        zv = _to_mpf(z)
        _check_not_nonpositive_integer(zv, "double_gamma")
        zpm1 = constants(bits).zeta_prime_minus1.value
        value = 1 / _barnes_g_raw(zv, zpm1)
        return _approx(value, bits)


# ---------------------------------------------------------------------------
# closed forms


def _pole_ks(sym: SymmetryClass):
    """Half-integer pole locations are 1/2 - k for these k."""
    return 2 if sym is SymmetryClass.Sp else 1


def _near_pole(sym: SymmetryClass, lam: mp.mpf) -> mp.mpf | None:
    k = int(mp.nint(mp.mpf("0.5") - lam))
    if k < _pole_ks(sym):
        return None
    location = mp.mpf("0.5") - k
    if abs(lam - location) < _POLE_RADIUS:
        return location
    return None


def _check_pole(sym: SymmetryClass, lam: mp.mpf) -> None:
    location = _near_pole(sym, lam)
    if location is not None:
        raise PoleError(
            f"{sym.value} moment has a pole at degree {mp.nstr(location, 8)}; "
            "requested point is within 1e-8 of it"
        )


def _log_power_mpf(sym: SymmetryClass, lam: mp.mpf) -> mp.mpf:
    if sym is SymmetryClass.U:
        return lam * lam
    if sym is SymmetryClass.O:
        return lam * (lam - 1) / 2
    return lam * (lam + 1) / 2


def _ratio_closed_raw(sym: SymmetryClass, lam: mp.mpf, c: FundamentalConstants) -> mp.mpf:
    """g_lambda / Gamma(1 + B(lambda)) via Barnes G.

    The double-gamma/Gamma combinations are folded into pure reciprocal-G
    form using G(z+1) = Gamma(z) G(z), which removes the removable
    singularities (notably the symplectic point at degree -1/2).
    """
    ln2 = c.log_2.value
    zp0 = c.zeta_prime_0.value
    zpm1 = c.zeta_prime_minus1.value
    half = mp.mpf("0.5")
    if sym is SymmetryClass.U:
        log_pref = ln2 / 12 + 3 * zpm1 - 2 * lam * zp0 - 2 * lam * lam * ln2
        g_a = _barnes_g_raw(lam + half, zpm1)
        g_b = _barnes_g_raw(lam + 1 + half, zpm1)
        return mp.exp(log_pref) / (g_a * g_b)
    if sym is SymmetryClass.O:
        log_pref = (
            -mp.mpf(17) / 24 * ln2
            + mp.mpf(3) / 2 * zpm1
            + half * zp0
            - lam * zp0
            + lam * ln2
            - lam * lam / 2 * ln2
        )
        return mp.exp(log_pref) / _barnes_g_raw(lam + half, zpm1)
    log_pref = (
        -mp.mpf(5) / 24 * ln2
        + mp.mpf(3) / 2 * zpm1
        - half * zp0
        - lam * zp0
        - lam * ln2
        - lam * lam / 2 * ln2
    )
    return mp.exp(log_pref) / _barnes_g_raw(lam + 1 + half, zpm1)


def moment_ratio_closed_form(sym: SymmetryClass, lam, precision_bits=None) -> RealApprox:
    """Closed form for the moment constant divided by Gamma(1 + B(lambda)).

    This is the analytic object whose poles sit at half-integers below
    1/2; ``pole_order`` probes it directly.
    """
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        lam_v = _to_mpf(lam)
        _check_pole(sym, lam_v)
        value = _ratio_closed_raw(sym, lam_v, constants(bits))
        return _approx(value, bits)


def moment_closed_form(sym: SymmetryClass, lam, precision_bits=None) -> RealApprox:
    """Moment constant at real degree, Barnes-G closed form.

    Includes the Gamma(1 + B(lambda)) factor, so integer degrees
    reproduce the exact integer constants.
    """
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        lam_v = _to_mpf(lam)
        _check_pole(sym, lam_v)
        c = constants(bits)
        value = mp.gamma(1 + _log_power_mpf(sym, lam_v)) * _ratio_closed_raw(
            sym, lam_v, c
        )
        return _approx(value, bits)


# ---------------------------------------------------------------------------
# defining limits


class _RunningProduct:
    """prod_{i=1..m} term_i, advanced monotonically.

    ``ratio(m)`` maps term_m to term_{m+1}; advancement is incremental so
    a doubling ladder costs O(final index) arithmetic in total.
    """

    def __init__(self, first_term: mp.mpf, ratio):
        self._ratio = ratio
        self._m = 0
        self._next_term = first_term
        self._value = mp.mpf(1)

    def advance(self, m_target: int) -> mp.mpf:
        while self._m < m_target:
            self._value *= self._next_term
            self._m += 1
            self._next_term = self._next_term * self._ratio(self._m)
        if self._m != m_target:
            raise RuntimeError("running product advanced out of order")
        return self._value


def _limit_state(sym: SymmetryClass, lam: mp.mpf):
    """Build an f(N) evaluator for the finite-N product of the given class."""
    half = mp.mpf("0.5")
    b_exp = _log_power_mpf(sym, lam)
    if sym is SymmetryClass.U:
        prod = _RunningProduct(
            mp.gamma(1 + 2 * lam) / mp.gamma(1 + lam) ** 2,
            lambda j: j * (j + 2 * lam) / (j + lam) ** 2,
        )

        def f(n: int) -> mp.mpf:
            return mp.power(n, -b_exp) * prod.advance(n)

        return f
    # Shared inner product Q(M) = prod_{m<=M} Gamma(m)/Gamma(m+lam).
    q = _RunningProduct(1 / mp.gamma(1 + lam), lambda m: m / (m + lam))
    if sym is SymmetryClass.O:
        r = _RunningProduct(
            mp.gamma(lam + half) / mp.gamma(half),
            lambda j: (j - half + lam) / (j - half),
        )

        def f(n: int) -> mp.mpf:
            q_low = q.advance(n - 1)
            q_high = q.advance(2 * n - 1)
            return (
                half
                * mp.power(n, -b_exp)
                * mp.power(2, 2 * n * lam)
                * (q_high / q_low)
                * r.advance(n)
            )

        return f
    s = _RunningProduct(
        mp.gamma(1 + half + lam) / mp.gamma(1 + half),
        lambda j: (j + half + lam) / (j + half),
    )

    def f(n: int) -> mp.mpf:
        q_low = q.advance(n + 1)
        q_high = q.advance(2 * n + 1)
        return (
            mp.power(n, -b_exp)
            * mp.power(2, 2 * n * lam)
            * (q_high / q_low)
            * s.advance(n)
        )

    return f


def _richardson_top(values) -> mp.mpf:
    """Neville extrapolation to N -> infinity assuming a 1/N error ladder.

    ``values[i]`` is f at N_0 * 2^i; successive levels cancel 1/N^m.
    """
    row = list(values)
    for m in range(1, len(values)):
        factor = mp.mpf(2**m - 1)
        row = [
            row[i + 1] + (row[i + 1] - row[i]) / factor
            for i in range(len(row) - 1)
        ]
    return row[0]


def moment_by_limit(
    sym: SymmetryClass, lam, target_digits: int = 8, precision_bits=None
) -> RealApprox:
    """Moment constant from its defining large-N limit.

    Evaluates the finite-N Gamma-ratio product on the doubling ladder
    N = 32, 64, ... and Richardson-extrapolates (leading error c/N, with
    higher powers cancelled level by level) until two successive
    extrapolants agree to ``target_digits`` significant digits.
    """
    bits = _resolve_bits(precision_bits)
    if target_digits < 1:
        raise DomainError("target_digits must be at least 1")
    with mp.workprec(bits + _GUARD_BITS):
        lam_v = _to_mpf(lam)
        _check_pole(sym, lam_v)
        if lam_v < mp.mpf("-0.5"):
            raise DomainError(
                "the limit products are used only for degree >= -1/2; "
                "use moment_closed_form below that"
            )
        gamma_factor = mp.gamma(1 + _log_power_mpf(sym, lam_v))
        f = _limit_state(sym, lam_v)
        tol = mp.mpf(10) ** (-target_digits)
        values = []
        best_prev = None
        n = _LADDER_START
        while n <= _LADDER_MAX_N:
            values.append(f(n))
            if len(values) >= 2:
                best = _richardson_top(values)
                if best_prev is not None:
                    err = abs(best - best_prev)
                    # relative test: the raw extrapolant is g / Gamma(1+B),
                    # which is tiny for large degrees, so an absolute floor
                    # here would declare convergence far too early
                    scale = abs(best) if best != 0 else mp.mpf(1)
                    if err <= tol * scale:
                        value = gamma_factor * best
                        return _approx(
                            value, bits, err=abs(gamma_factor) * err
                        )
                best_prev = best
            n *= 2
        raise NoConvergence(
            f"limit product for {sym.value} at degree {lam_v} did not "
            f"stabilize to {target_digits} digits by N = {_LADDER_MAX_N}"
        )


# ---------------------------------------------------------------------------
# special values and pole probing


def half_moment_unitary(precision_bits=None) -> RealApprox:
    """The unitary moment constant at degree 1/2, in closed form.

    Gamma(5/4) pi^{1/4} 2^{-1/6} exp((zeta'(2)/zeta(2) - gamma + 1)/4).
    """
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        c = constants(bits)
        zeta2 = mp.pi ** 2 / 6
        value = (
            mp.gamma(mp.mpf("1.25"))
            * mp.power(mp.pi, mp.mpf("0.25"))
            * mp.power(2, -mp.mpf(1) / 6)
            * mp.exp(
                (c.zeta_prime_2.value / zeta2 - c.euler_gamma.value + 1) / 4
            )
        )
        return _approx(value, bits)


def pole_order(
    sym: SymmetryClass,
    k: int,
    probe_radii=(1e-2, 1e-3, 1e-4),
    precision_bits=None,
) -> int:
    """Numeric order of the pole of the moment ratio at degree 1/2 - k.

    Fits log|ratio| against log(radius) by least squares over the probe
    radii; the negated slope, rounded, is the estimated order (0 means
    the point is regular).  A poor linear fit raises NoConvergence.
    """
    if k < 1:
        raise DomainError("pole probing needs a positive integer k")
    if len(probe_radii) < 2:
        raise DomainError("need at least two probe radii")
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        c = constants(bits)
        lam0 = mp.mpf("0.5") - k
        xs = []
        ys = []
        for radius in probe_radii:
            eps = mp.mpf(radius)
            if eps <= 0:
                raise DomainError("probe radii must be positive")
            value = _ratio_closed_raw(sym, lam0 + eps, c)
            xs.append(mp.log(eps))
            ys.append(mp.log(abs(value)))
        m = len(xs)
        x_mean = mp.fsum(xs) / m
        y_mean = mp.fsum(ys) / m
        sxx = mp.fsum((x - x_mean) ** 2 for x in xs)
        sxy = mp.fsum(
            (x - x_mean) * (y - y_mean) for x, y in zip(xs, ys)
        )
        slope = sxy / sxx
        intercept = y_mean - slope * x_mean
        residual = mp.sqrt(
            mp.fsum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
            / m
        )
        if residual > mp.mpf("0.1"):
            raise NoConvergence(
                f"pole probe at degree {lam0} is not a clean power law "
                f"(rms residual {mp.nstr(residual, 5)})"
            )
        return int(mp.nint(-slope))


# ---------------------------------------------------------------------------
# asymptotic expansions


def log_moment_asymptotic(sym: SymmetryClass, k: int, precision_bits=None) -> RealApprox:
    """Expanded large-k approximation of log g_k (remainder O(1/k))."""
    if k < 2:
        raise DomainError("the expansion needs k >= 2")
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        c = constants(bits)
        ln2 = c.log_2.value
        zp0 = c.zeta_prime_0.value
        zpm1 = c.zeta_prime_minus1.value
        kk = mp.mpf(k)
        log_k = mp.log(kk)
        if sym is SymmetryClass.U:
            value = (
                kk * kk * log_k
                + (mp.mpf("0.5") - 2 * ln2) * kk * kk
                + mp.mpf(11) / 12 * log_k
                + ln2 / 12
                - zp0
                + zpm1
            )
        elif sym is SymmetryClass.O:
            value = (
                kk * kk * log_k / 2
                + (mp.mpf("0.25") - ln2) * kk * kk
                - kk * log_k / 2
                + (mp.mpf(3) / 2 * ln2 - mp.mpf("0.5")) * kk
                + mp.mpf(23) / 24 * log_k
                - mp.mpf(29) / 24 * ln2
                + mp.mpf("0.25")
                - zp0
                + zpm1 / 2
            )
        else:
            value = (
                kk * kk * log_k / 2
                + (mp.mpf("0.25") - ln2) * kk * kk
                + kk * log_k / 2
                + (mp.mpf("0.5") - mp.mpf(3) / 2 * ln2) * kk
                + mp.mpf(23) / 24 * log_k
                - mp.mpf(17) / 24 * ln2
                + mp.mpf("0.25")
                - zp0
                + zpm1 / 2
            )
        return _approx(value, bits, err=mp.mpf(1) / k)


SUM_KINDS = ("log_j", "log_odd", "j_log_j", "j_log_odd")


def log_sum_asymptotics(kind: str, n: int, precision_bits=None):
    """Partial log-sums next to their asymptotic expansions.

    Returns ``(exact, asymptotic)`` where exact is the direct summation
    and asymptotic the expansion used by the large-k moment formulas.
    Kinds: ``log_j`` sums log j, ``log_odd`` sums log(2j-1), ``j_log_j``
    sums j log j, ``j_log_odd`` sums j log(2j-1), all over 1 <= j <= n.
    """
    if kind not in SUM_KINDS:
        raise DomainError(f"unknown sum kind {kind!r}; expected one of {SUM_KINDS}")
    if n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits)
    with mp.workprec(bits + _GUARD_BITS):
        c = constants(bits)
        zp0 = c.zeta_prime_0.value
        zpm1 = c.zeta_prime_minus1.value
        ln2 = c.log_2.value
        nn = mp.mpf(n)
        log_n = mp.log(nn)
        log_2n = log_n + ln2
        if kind == "log_j":
            exact = mp.fsum(mp.log(j) for j in range(1, n + 1))
            asym = nn * log_n - nn + log_n / 2 - zp0 + 1 / (12 * nn)
            err = mp.mpf(1) / (nn * nn)
        elif kind == "log_odd":
            exact = mp.fsum(mp.log(2 * j - 1) for j in range(1, n + 1))
            asym = nn * log_2n - nn + ln2 / 2 - 1 / (24 * nn)
            err = mp.mpf(1) / (nn * nn)
        elif kind == "j_log_j":
            exact = mp.fsum(j * mp.log(j) for j in range(1, n + 1))
            asym = (
                nn * nn * log_n / 2
                - nn * nn / 4
                + nn * log_n / 2
                + log_n / 12
                + mp.mpf(1) / 12
                - zpm1
            )
            err = mp.mpf(1) / nn
        else:
            exact = mp.fsum(j * mp.log(2 * j - 1) for j in range(1, n + 1))
            asym = (
                nn * nn * log_2n / 2
                - nn * nn / 4
                + nn * log_2n / 2
                - nn / 2
                - log_n / 24
                + mp.mpf(7) / 24 * ln2
                - mp.mpf(1) / 24
                + zpm1 / 2
            )
            err = mp.mpf(1) / nn
        return (
            _approx(exact, bits),
            _approx(asym, bits, err=err),
        )
