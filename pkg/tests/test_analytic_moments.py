"""Analytic continuation in the order parameter: limits, closed forms, poles."""

import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfmoments import (
    SUM_KINDS,
    DomainError,
    PoleError,
    SymmetryClass,
    barnes_g,
    constants,
    double_gamma,
    half_moment_unitary,
    log_moment_asymptotic,
    log_power,
    log_sum_asymptotics,
    moment_by_limit,
    moment_closed_form,
    moment_constant,
    moment_ratio_closed_form,
    pole_order,
)

U, O, SP = SymmetryClass.U, SymmetryClass.O, SymmetryClass.Sp


def rel_gap(got, expect) -> float:
    with mp.workprec(300):
        return float(abs(mp.mpf(got) - mp.mpf(expect)) / abs(mp.mpf(expect)))


# ---------------------------------------------------------------- constants


def test_zeta_prime_zero_is_half_log_2pi():
    c = constants()
    with mp.workprec(256):
        assert abs(c.zeta_prime_0.value + c.log_2pi.value / 2) < mp.mpf(2) ** -200


def test_glaisher_identity_ties_the_bundle_together():
    # log A = 1/12 - zeta'(-1) must equal (gamma + log 2pi)/12 - zeta'(2)/(2 pi^2)
    c = constants()
    with mp.workprec(256):
        left = mp.mpf(1) / 12 - c.zeta_prime_minus1.value
        right = (c.euler_gamma.value + c.log_2pi.value) / 12 - c.zeta_prime_2.value / (
            2 * mp.pi**2
        )
        assert abs(left - right) < mp.mpf(2) ** -200


def test_euler_gamma_against_harmonic_oracle():
    # Euler-Maclaurin for H_n - log n, independent of the library constant
    c = constants()
    with mp.workprec(256):
        n = 4000
        h = mp.fsum(mp.mpf(1) / j for j in range(1, n + 1))
        approx = (
            h
            - mp.log(n)
            - mp.mpf(1) / (2 * n)
            + mp.mpf(1) / (12 * n**2)
            - mp.mpf(1) / (120 * n**4)
        )
        assert abs(approx - c.euler_gamma.value) < 1e-20


def test_constants_honor_precision_request():
    c = constants(precision_bits=128)
    assert c.precision_bits == 128
    assert c.euler_gamma.precision_bits == 128


# ----------------------------------------------------------------- barnes G


def test_barnes_small_values():
    for z, want in ((1, 1), (2, 1), (3, 1), (4, 2), (5, 12)):
        assert rel_gap(barnes_g(z).value, want) < 1e-70


def test_barnes_against_reference_implementation():
    with mp.workdps(90):
        for z in ("0.25", "0.8", "1.3", "2.75", "5.5", "10.2", "33.7", "0.5"):
            ours = barnes_g(Fraction(z))
            want = mp.barnesg(mp.mpf(z))
            assert rel_gap(ours.value, want) < 1e-60, z


@given(st.floats(min_value=0.05, max_value=10, allow_nan=False))
@settings(max_examples=80, deadline=None)
def test_barnes_recursion(z):
    with mp.workprec(256):
        zv = mp.mpf(z)
        lhs = barnes_g(zv + 1).value
        rhs = mp.gamma(zv) * barnes_g(zv).value
        assert abs(lhs - rhs) <= abs(rhs) * mp.mpf(2) ** -180


def test_barnes_pole_guard():
    for z in (0, -1, -3):
        with pytest.raises(PoleError):
            barnes_g(z)
        with pytest.raises(PoleError):
            double_gamma(z)


def test_double_gamma_normalization():
    for z in (1, 2, 3):
        assert rel_gap(double_gamma(z).value, 1) < 1e-70


# ------------------------------------------------------------- closed forms


@pytest.mark.parametrize("sym", list(SymmetryClass))
def test_closed_form_reproduces_integers(sym):
    for k in range(1, 7):
        got = moment_closed_form(sym, k)
        assert rel_gap(got.value, moment_constant(sym, k)) < 1e-50, (sym, k)


def test_cross_type_product_identity():
    # ratio_O(lam) * ratio_Sp(lam) = 2^(lam^2 - 1) * ratio_U(lam)
    with mp.workprec(256):
        for lam in (Fraction(3, 10), Fraction(9, 10), Fraction(14, 10), Fraction(22, 10)):
            left = moment_ratio_closed_form(O, lam).value * moment_ratio_closed_form(
                SP, lam
            ).value
            right = mp.mpf(2) ** (mp.mpf(lam.numerator) ** 2 / lam.denominator**2 - 1)
            right *= moment_ratio_closed_form(U, lam).value
            assert abs(left - right) < abs(right) * 1e-40, lam


def test_shift_identity_off_integers():
    with mp.workprec(256):
        for lam in (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2)):
            left = moment_closed_form(O, lam + 1).value
            right = mp.mpf(2) ** mp.mpf(float(lam)) * moment_closed_form(SP, lam).value
            assert abs(left - right) < abs(right) * 1e-40, lam


def test_closed_form_pole_guards():
    with pytest.raises(PoleError):
        moment_closed_form(U, Fraction(-1, 2))
    with pytest.raises(PoleError):
        moment_closed_form(O, Fraction(-1, 2))
    with pytest.raises(PoleError):
        moment_closed_form(SP, Fraction(-3, 2))


def test_symplectic_regular_at_minus_half():
    # Sp has pole order k-1, so the k=1 point is regular
    got = moment_closed_form(SP, Fraction(-1, 2))
    assert abs(float(got) - 0.9543274015) < 1e-9


def test_ratio_never_vanishes_on_grid():
    lam = Fraction(-2, 5)
    while lam <= 4:
        for sym in SymmetryClass:
            assert abs(moment_ratio_closed_form(sym, lam).value) > 1e-30
        lam += Fraction(1, 10)


def test_half_moment_digits_and_range():
    h = half_moment_unitary()
    assert h.digits(25).startswith("1.0362329154")
    assert 1 <= float(h) <= 16 / 15
    assert rel_gap(h.value, moment_closed_form(U, Fraction(1, 2)).value) < 1e-40


# -------------------------------------------------------------- limit route


@pytest.mark.parametrize("sym", list(SymmetryClass))
def test_limit_matches_closed_form(sym):
    for lam in (Fraction(1, 2), 1, Fraction(17, 10)):
        got = moment_by_limit(sym, lam, target_digits=10)
        want = moment_closed_form(sym, lam)
        assert rel_gap(got.value, want.value) < 1e-8, (sym, lam)


def test_limit_err_estimate_covers_gap():
    got = moment_by_limit(O, Fraction(5, 2), target_digits=9)
    want = moment_closed_form(O, Fraction(5, 2))
    gap = abs(float(got) - float(want))
    assert gap <= max(got.err_estimate * 10, 1e-9)


def test_limit_domain_and_pole_guards():
    with pytest.raises(DomainError):
        moment_by_limit(U, -0.6)
    with pytest.raises(PoleError):
        moment_by_limit(U, Fraction(-1, 2))


# -------------------------------------------------------------- pole orders


def test_pole_orders():
    assert pole_order(U, 1) == 1
    assert pole_order(U, 2) == 3
    assert pole_order(U, 3) == 5
    assert pole_order(O, 1) == 1
    assert pole_order(O, 2) == 2
    assert pole_order(O, 3) == 3
    assert pole_order(SP, 1) == 0
    assert pole_order(SP, 2) == 1
    assert pole_order(SP, 3) == 2


# -------------------------------------------------------------- asymptotics


def _asym_abs_err(sym, k):
    with mp.workprec(300):
        exact = mp.log(mp.mpf(moment_constant(sym, k)))
        return float(abs(exact - log_moment_asymptotic(sym, k).value))


def test_asymptotic_error_decay_rates():
    # U remainder is O(1/k^2): the 1/k pieces cancel, so halving k
    # quarters the error; O and Sp keep genuine 1/k tails
    for sym, lo, hi in ((U, 3.5, 4.5), (O, 1.8, 2.2), (SP, 1.8, 2.2)):
        e50 = _asym_abs_err(sym, 50)
        e100 = _asym_abs_err(sym, 100)
        assert e100 < e50
        assert lo <= e50 / e100 <= hi, (sym, e50 / e100)


@pytest.mark.parametrize("sym", list(SymmetryClass))
def test_asymptotic_absolute_error_at_80(sym):
    assert _asym_abs_err(sym, 80) < 0.01


def test_asymptotic_rejects_small_k():
    with pytest.raises(DomainError):
        log_moment_asymptotic(U, 1)


# --------------------------------------------------------------- sum recipes


def test_sum_kinds_registry():
    assert SUM_KINDS == ("log_j", "log_odd", "j_log_j", "j_log_odd")


def test_log_sum_examples():
    exact, asym = log_sum_asymptotics("log_j", 1000)
    assert abs(float(exact) - float(asym)) < 1e-6
    exact, asym = log_sum_asymptotics("j_log_odd", 1000)
    assert abs(float(exact) - float(asym)) < 1e-2
    exact, asym = log_sum_asymptotics("log_j", 1)
    assert float(exact) == 0
    assert abs(float(exact) - float(asym)) < 0.01


@pytest.mark.parametrize("kind", SUM_KINDS)
def test_log_sum_error_shrinks(kind):
    def gap(n):
        exact, asym = log_sum_asymptotics(kind, n)
        return abs(float(exact) - float(asym))

    assert gap(2000) < gap(200)


def test_log_sum_rejects_unknown_kind():
    with pytest.raises(DomainError):
        log_sum_asymptotics("log_squares", 10)
