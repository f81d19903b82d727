"""High-precision reference values and exact remainders."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from tailcut.errors import DegenerateParameterError, OracleError
from tailcut.families import make_2f1, make_e1, make_zeta
from tailcut.oracle import (
    OracleConfig,
    e1_quadrature_value,
    e1_reference,
    e1_remainder_integral,
    e1_series_value,
    euler_maclaurin_zeta_tail,
    for_consumer,
    partial_sum_value,
    remainder_exact,
    zeta_em_value,
    zeta_reference,
)
from tailcut.resummation import remainder_power
from tailcut.scalars import Scalar
from tailcut.solver import solve_gamma

CFG60 = OracleConfig(digits=60)

# independently computed reference constants
ZETA_1_1 = "10.58444846495080982638640079173552303995"
STIELTJES_E1_5 = "0.8521108814236610090624349558628044776271"  # 5 e^5 E1(5)


def ex(v) -> Scalar:
    return Scalar.exact(Fraction(v))


def within(x: Scalar, literal: str, tol: str) -> bool:
    ref = Scalar.parse(literal, 80)
    return abs(x.to_real(80) - ref) < Scalar.parse(tol, 80)


def test_config_floor():
    assert for_consumer(50).digits == 80
    assert for_consumer(70).digits == 90


def test_zeta_reference_known_value():
    got = zeta_reference(Scalar.real("1.1", 50), CFG60)
    assert within(got, ZETA_1_1, "5e-37")


def test_zeta_reference_pi_squared_over_six():
    got = zeta_reference(ex(2), CFG60)
    with mpmath.workdps(90):
        want = Scalar.parse(mpmath.nstr(mpmath.pi ** 2 / 6, 70), 80)
    assert abs(got.to_real(80) - want) < Scalar.parse("1e-55", 80)


def test_zeta_reference_brute_force_s4():
    # direct summation with an integral tail bracket, good to ~20 digits
    scale = 10 ** 30
    N = 200_000
    acc = sum(scale // (k ** 4) for k in range(1, N + 1))
    mid = Fraction(acc, scale) + (Fraction(1, 3 * N ** 3) + Fraction(1, 3 * (N + 1) ** 3)) / 2
    got = zeta_reference(ex(4), CFG60)
    assert abs(got.to_real(80) - Scalar.exact(mid).to_real(80)) < Scalar.parse("1e-20", 80)


def test_zeta_em_anchors_agree():
    # Euler-Maclaurin corrections at partial-sum length N bottom out near
    # e^(-2 pi N), so 60 digits needs N >~ 22; both anchors sit safely past it
    a = zeta_em_value(ex(2), 60, 30)
    b = zeta_em_value(ex(2), 60, 45)
    assert abs(a - b) < Scalar.parse("1e-50", 60)


def test_zeta_em_rejects_too_small_anchor():
    with pytest.raises(OracleError):
        zeta_em_value(ex(2), 60, 5)


def test_zeta_domain():
    with pytest.raises(DegenerateParameterError):
        zeta_reference(ex(1), CFG60)
    with pytest.raises(DegenerateParameterError):
        zeta_reference(Scalar.real("0.5", 50), CFG60)


def test_e1_reference_known_value():
    got = e1_reference(ex(5), CFG60)
    assert within(got, STIELTJES_E1_5, "1e-38")


def test_e1_reference_bounds():
    # integrand bounds: 0 < 1/(1+t) <= 1 gives a value in (0, 1)
    small = e1_reference(ex(1), CFG60)
    assert Scalar.real(0, 60) < small < Scalar.real(1, 60)
    # leading asymptotics: value -> 1 within 2/z
    big = e1_reference(ex(50), CFG60)
    assert abs(big - 1) < Scalar.parse("0.04", 60)


def test_e1_routes_agree_independently():
    for z in (1, 2, 5, 10):
        q = e1_quadrature_value(ex(z), 60, CFG60)
        s = e1_series_value(ex(z), 60)
        assert abs(q - s) < Scalar.parse("1e-50", 60) * abs(q)


def test_e1_domain():
    with pytest.raises(DegenerateParameterError):
        e1_reference(ex(0), CFG60)
    with pytest.raises(DegenerateParameterError):
        e1_reference(ex(-2), CFG60)


def test_remainder_frozen_values_2f1():
    fam = make_2f1(ex(Fraction(1, 3)), ex(Fraction(7, 5)), ex(Fraction(9, 2)), ex(Fraction(-17, 20)))
    r1 = remainder_exact(fam, 1, CFG60)
    r10 = remainder_exact(fam, 10, CFG60)
    assert within(r1, "-0.0164124709359595341006023858623", "1e-28")
    assert within(r10, "0.0000319254822288384255840144456487", "1e-28")


def test_remainder_frozen_values_e1():
    fam = make_e1(ex(5))
    r2 = remainder_exact(fam, 2, CFG60)
    r10 = remainder_exact(fam, 10, CFG60)
    assert within(r2, "0.0278891185763389909375650441372", "1e-28")
    assert within(r10, "0.250470878576338990937565044137", "1e-28")


def test_remainder_difference_equation():
    # r_{n+1} - r_n = a_{n+1} ties the oracle to the series terms
    fams = [
        make_zeta(ex(2)),
        make_2f1(ex(Fraction(2, 3)), ex(Fraction(6, 5)), ex(Fraction(7, 4)), ex(Fraction(-1, 5))),
        make_e1(ex(3)),
    ]
    for fam in fams:
        for n in (0, 4, 9):
            lhs = remainder_exact(fam, n + 1, CFG60) - remainder_exact(fam, n, CFG60)
            a = fam.term(n + 1).to_real(60)
            assert abs(lhs - a) < Scalar.parse("1e-45", 60) * max(abs(a), Scalar.real(1, 60))


def test_e1_remainder_integral_route():
    fam = make_e1(ex(5))
    direct = e1_remainder_integral(ex(5), 4, 60, CFG60)
    via_dispatch = remainder_exact(fam, 4, CFG60)
    assert abs(direct - via_dispatch) < Scalar.parse("1e-55", 60)


def test_hyper_tail_needs_contraction():
    fam = make_2f1(ex(Fraction(1, 3)), ex(Fraction(7, 5)), ex(Fraction(9, 2)), ex(Fraction(3, 2)))
    with pytest.raises(OracleError):
        remainder_exact(fam, 2, CFG60)


def test_partial_sum_value_matches_exact():
    fam = make_e1(ex(5))
    got = partial_sum_value(fam, 6, CFG60)
    want = fam.partial_sum(6).to_real(60)
    assert abs(got - want) < Scalar.parse("1e-55", 60)
    zf = make_zeta(Scalar.real("1.1", 50))
    direct = sum((Fraction(k) ** Fraction(-1) for k in range(1, 2)), Fraction(0))  # n=0: single term 1
    assert abs(partial_sum_value(zf, 0, CFG60) - 1) < Scalar.parse("1e-55", 60)


def test_euler_maclaurin_tail_is_power_remainder():
    s = ex(2)
    fam = make_zeta(s)
    for m in (0, 3, 10):
        vector = solve_gamma(fam, m)
        for n in (0, 8, 15):
            lhs = euler_maclaurin_zeta_tail(s, n, m)
            rhs = remainder_power(fam, vector, n)
            assert lhs.as_fraction() == rhs.as_fraction()


def test_euler_maclaurin_first_term():
    # mu=0 term alone: -(n+2)^(1-s)/(s-1)
    got = euler_maclaurin_zeta_tail(ex(2), 0, 0)
    assert got.as_fraction() == Fraction(-1, 2)


def test_euler_maclaurin_accuracy_pin():
    # s=2, n=8, m=10: difference from the true remainder stays below the
    # first omitted term, whose magnitude was measured at ~2.53e-14
    got = euler_maclaurin_zeta_tail(ex(2), 8, 10).to_real(60)
    true = remainder_exact(make_zeta(ex(2)), 8, CFG60)
    assert abs(got - true) < Scalar.parse("2.6e-14", 60)


def test_euler_maclaurin_rejects_s_one():
    with pytest.raises(DegenerateParameterError):
        euler_maclaurin_zeta_tail(ex(1), 3, 2)


def test_reference_caching_is_stable():
    a = zeta_reference(ex(2), CFG60)
    b = zeta_reference(ex(2), CFG60)
    assert (a - b).is_zero()
