"""Factorial-series rewriting, Pade approximants, corrected sums."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from tailcut.combinatorics import pochhammer, stirling_first
from tailcut.errors import DegeneratePadeError, PoleError
from tailcut.families import make_2f1, make_e1, make_zeta
from tailcut.resummation import (
    corrected_sum,
    gamma_to_factorial,
    pade_from_series,
    remainder_factorial,
    remainder_pade,
    remainder_power,
)
from tailcut.scalars import Scalar
from tailcut.solver import GammaVector, solve_gamma


def ex(v) -> Scalar:
    return Scalar.exact(Fraction(v))


def arbitrary_vector(order: int, seed: int) -> GammaVector:
    rng = random.Random(seed)
    gammas = tuple(ex(Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))) for _ in range(order + 1))
    return GammaVector(family=make_e1(ex(5)), order=order, gammas=gammas)


def test_factorial_weights_low_orders():
    v = arbitrary_vector(5, 3)
    g = [x.as_fraction() for x in v.gammas]
    tilde = [x.as_fraction() for x in gamma_to_factorial(v).coefficients]
    assert tilde[0] == g[0]
    assert tilde[1] == g[1]
    assert tilde[2] == g[2]
    assert tilde[3] == g[2] + g[3]
    assert tilde[4] == 2 * g[2] + 3 * g[3] + g[4]
    assert tilde[5] == 6 * g[2] + 11 * g[3] + 6 * g[4] + g[5]


def test_factorial_weights_are_unsigned_stirling():
    v = arbitrary_vector(9, 4)
    g = [x.as_fraction() for x in v.gammas]
    tilde = [x.as_fraction() for x in gamma_to_factorial(v).coefficients]
    for mu in range(2, 10):
        want = sum(abs(stirling_first(mu - 1, nu - 1)) * g[nu] for nu in range(1, mu + 1))
        assert tilde[mu] == want


def test_remainder_power_is_horner_sum():
    fam = make_e1(ex(5))
    vector = solve_gamma(fam, 4)
    n = 6
    eps = Fraction(1, n + 1)
    direct = sum(g.as_fraction() * eps ** mu for mu, g in enumerate(vector.gammas))
    want = fam.scale_at(n).as_fraction() * direct
    assert remainder_power(fam, vector, n).as_fraction() == want


def test_remainder_factorial_matches_direct_formula():
    fam = make_e1(ex(5))
    vector = solve_gamma(fam, 16)
    tilde = gamma_to_factorial(vector)
    n = 10
    base = Scalar.exact(n + fam.alpha)
    direct = tilde.coefficients[0]
    for mu in range(1, 17):
        direct = direct + tilde.coefficients[mu] / pochhammer(base, mu)
    want = fam.scale_at(n) * direct
    assert remainder_factorial(fam, tilde, n).as_fraction() == want.as_fraction()


def test_pade_geometric_series():
    coeffs = [ex(1)] * 5
    approx = pade_from_series(coeffs, 0, 1)
    assert [c.as_fraction() for c in approx.numerator] == [1]
    assert [c.as_fraction() for c in approx.denominator] == [1, -1]
    assert approx.evaluate(ex(Fraction(1, 2))).as_fraction() == 2


def test_pade_exponential_two_two():
    coeffs = [ex(Fraction(1, math.factorial(k))) for k in range(5)]
    approx = pade_from_series(coeffs, 2, 2)
    assert [c.as_fraction() for c in approx.numerator] == [1, Fraction(1, 2), Fraction(1, 12)]
    assert [c.as_fraction() for c in approx.denominator] == [1, Fraction(-1, 2), Fraction(1, 12)]


def test_pade_degenerate_table():
    # a geometric series is exactly [0/1]; demanding [1/2] gives a singular
    # Toeplitz block and must fail rather than silently reduce the degree
    coeffs = [ex(2 ** k) for k in range(5)]
    with pytest.raises(DegeneratePadeError):
        pade_from_series(coeffs, 1, 2)


def test_pade_validation():
    coeffs = [ex(1), ex(1)]
    with pytest.raises(ValueError):
        pade_from_series(coeffs, 2, 2)  # needs L+M+1 coefficients
    with pytest.raises(ValueError):
        pade_from_series(coeffs, -1, 0)


def test_pade_pole_error():
    approx = pade_from_series([ex(1), ex(2), ex(4)], 0, 1)
    with pytest.raises(PoleError):
        approx.evaluate(ex(Fraction(1, 2)))


def test_pade_l_over_zero_is_truncation():
    fam = make_e1(ex(5))
    vector = solve_gamma(fam, 6)
    shorter = GammaVector(family=fam, order=3, gammas=vector.gammas[:4])
    for n in (4, 9):
        lhs = remainder_pade(fam, vector, n, 3, 0)
        rhs = remainder_power(fam, shorter, n)
        assert lhs.as_fraction() == rhs.as_fraction()


def test_remainder_pade_requires_enough_coefficients():
    fam = make_e1(ex(5))
    vector = solve_gamma(fam, 4)
    with pytest.raises(ValueError):
        remainder_pade(fam, vector, 3, 3, 2)


def test_pade_real_mode_close_to_exact():
    fam_exact = make_2f1(ex(Fraction(1, 3)), ex(Fraction(7, 5)), ex(Fraction(9, 2)), ex(Fraction(-17, 20)))
    fam_real = make_2f1(*(ex(v).to_real(50) for v in
                          (Fraction(1, 3), Fraction(7, 5), Fraction(9, 2), Fraction(-17, 20))))
    v_exact = solve_gamma(fam_exact, 8)
    v_real = solve_gamma(fam_real, 8)
    n = 10
    lhs = remainder_pade(fam_exact, v_exact, n, 4, 4).as_fraction()
    rhs = remainder_pade(fam_real, v_real, n, 4, 4).as_fraction()
    assert abs(lhs - rhs) < Fraction(1, 10 ** 40)


def test_corrected_sum_dispatch():
    fam = make_e1(ex(5))
    n, m = 8, 6
    vector = solve_gamma(fam, m)
    partial = fam.partial_sum(n)
    assert corrected_sum(fam, n, m).as_fraction() == (partial - remainder_power(fam, vector, n)).as_fraction()
    tilde = gamma_to_factorial(vector)
    assert corrected_sum(fam, n, m, method="factorial").as_fraction() == \
        (partial - remainder_factorial(fam, tilde, n)).as_fraction()
    assert corrected_sum(fam, n, m, method="pade").as_fraction() == \
        (partial - remainder_pade(fam, vector, n, 3, 3)).as_fraction()
    assert corrected_sum(fam, n, m, method="pade", L=2, M=4).as_fraction() == \
        (partial - remainder_pade(fam, vector, n, 2, 4)).as_fraction()
    with pytest.raises(ValueError):
        corrected_sum(fam, n, m, method="euler")
