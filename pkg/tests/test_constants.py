"""
Tests for the density constants and the delta tables.
"""

import math
from fractions import Fraction

import pytest

from artinlab.constants import (
    DensityValue,
    F_almost,
    artin_A,
    artin_A0,
    artin_A1,
    delta_star_table,
    delta_table,
    epsilon_d,
    heuristic_exceptional_count,
    heuristic_max_index,
    hooley_sum_truncated,
    kummer_degree,
    mean_pg_predicted,
    mean_pg_star_predicted,
    sigma_m,
    sigma_m_factor,
    tilde_A0,
    tilde_A0_mertens,
    tilde_A1,
    twin_prime_C2,
    varrho,
    varrho0,
    vaughan_product,
)
from artinlab.errors import InvalidArgumentError
from artinlab.numth import decompose

ARTIN_CONSTANT = 0.3739558136192023
TWIN_PRIME_CONSTANT = 0.6601618158468696


def test_artin_constant():
    value = artin_A(2, 10**6)
    assert value.contains(ARTIN_CONSTANT)
    assert value.error_bound < 1e-5
    assert artin_A0(1, 10**6).contains(ARTIN_CONSTANT)


def test_A0_with_h_three():
    a0 = artin_A0(1, 10**5)
    a3 = artin_A0(3, 10**5)
    assert a3.approx == pytest.approx(0.6 * a0.approx, rel=1e-12)


def test_A0_rejects_even_h_and_small_limits():
    with pytest.raises(InvalidArgumentError):
        artin_A0(2, 10**5)
    with pytest.raises(InvalidArgumentError):
        artin_A0(1, 50)


@pytest.mark.parametrize(
    "g, expected",
    [(5, Fraction(20, 19)), (-27, Fraction(2)), (-3, Fraction(6, 5)), (2, Fraction(1)), (-15, Fraction(94, 95)), (-16, Fraction(1))],
)
def test_A1_exact_values(g, expected):
    assert artin_A1(decompose(g)).exact == expected


def test_A1_of_minus_sixteen():
    # g1 = -1 has no quadratic field to entangle with
    dec = decompose(-16)
    assert (dec.g1, dec.h, dec.is_square) == (-1, 1, False)
    assert artin_A1(dec).exact == 1


def test_A1_range():
    for g in range(-400, 401):
        if abs(g) <= 1:
            continue
        dec = decompose(g)
        if dec.is_square:
            continue
        assert Fraction(2, 3) <= artin_A1(dec).exact <= 2


def test_A_of_five():
    assert artin_A(5, 10**6).approx == pytest.approx(20 / 19 * ARTIN_CONSTANT, rel=1e-6)


def test_A_rejects_outside_domain():
    for g in (0, 1, -1, 4, 9):
        with pytest.raises(InvalidArgumentError):
            artin_A(g, 10**5)


def test_A1_rejects_squares():
    with pytest.raises(InvalidArgumentError):
        artin_A1(decompose(16))


def test_density_value_product():
    exact = DensityValue.from_exact(Fraction(1, 3)) * DensityValue.from_exact(Fraction(3, 7))
    assert exact.exact == Fraction(1, 7)
    mixed = DensityValue(approx=0.5, error_bound=1e-6) * DensityValue.from_exact(Fraction(2))
    assert mixed.exact is None
    assert mixed.contains(1.0)


def test_kummer_degree():
    dec = decompose(5)
    assert epsilon_d(10, dec) == 2
    assert epsilon_d(5, dec) == 1
    assert kummer_degree(10, dec) == 20
    assert kummer_degree(2, decompose(2)) == 2
    assert kummer_degree(3, decompose(8)) == 2
    with pytest.raises(InvalidArgumentError):
        kummer_degree(4, dec)


@pytest.mark.parametrize("g", [2, 3, 5, -3, 8, -27, 12])
def test_hooley_sum_converges_to_A(g):
    truncated = hooley_sum_truncated(decompose(g), 2**14)
    assert truncated.heuristic
    assert truncated.approx == pytest.approx(artin_A(g, 10**6).approx, abs=1e-3)


def test_F_almost():
    assert F_almost(2) == 1
    assert F_almost(7) == 4
    assert F_almost(11) == 8
    with pytest.raises(InvalidArgumentError):
        F_almost(9)


def test_delta_table_first_rows():
    table = delta_table(5)
    assert [(r.p, r.delta) for r in table.rows] == [
        (2, Fraction(1, 2)),
        (3, Fraction(1, 6)),
        (5, Fraction(2, 15)),
    ]
    assert table.rows[-1].weighted_partial_sum == Fraction(13, 6)
    assert table.row(3).delta == Fraction(1, 6)
    with pytest.raises(InvalidArgumentError):
        table.row(4)


@pytest.mark.parametrize("build", [delta_table, delta_star_table])
def test_delta_tables_telescope_over_first_thousand_primes(build):
    # 7919 is the 1000th prime
    table = build(7919)
    assert len(table.rows) == 1000
    for row in table.rows:
        assert row.partial_sum + row.residual == 1
        assert row.delta > 0
    assert table.rows[-1].residual == table.residual_product
    assert len(table.rows_upto(100)) == 25


def test_delta_star_table():
    table = delta_star_table(7)
    # F(2) = 1, F(3) = 2, F(5) = 3, F(7) = 4
    assert table.rows[0].delta == Fraction(1, 2)
    assert table.rows[1].delta == Fraction(1, 2) * Fraction(2, 3)
    assert table.rows[1].residual == Fraction(1, 6)
    assert table.rows[2].delta == Fraction(1, 6) * Fraction(3, 5)
    for row in table.rows:
        assert row.partial_sum + row.residual == 1


def test_mean_pg_predicted():
    mean = mean_pg_predicted(10**4)
    assert mean.heuristic
    assert mean.exact is None
    assert 4 < mean.approx < 6
    assert mean.error_bound < 1e-3
    # the partial sums grow with the cutoff
    assert mean_pg_predicted(1000).approx <= mean.approx
    with pytest.raises(InvalidArgumentError):
        mean_pg_predicted(50)


def test_mean_pg_star_predicted_is_smaller():
    assert mean_pg_star_predicted(10**4).approx < mean_pg_predicted(10**4).approx


def test_sigma_m():
    assert sigma_m_factor(5, 2) == Fraction(1, 32)
    assert sigma_m(1, 10**6).contains(ARTIN_CONSTANT)
    for m in range(1, 8):
        s = sigma_m(m, 10**5)
        assert 0 < s.approx < 2.0**-m
    with pytest.raises(InvalidArgumentError):
        sigma_m(0, 10**5)


def test_varrho():
    rho0 = varrho0(30, 10**5)
    rho = varrho(30, 10**5)
    assert rho0.approx > ARTIN_CONSTANT
    assert rho.approx == pytest.approx(math.exp(rho0.approx))
    assert rho.approx > 1


def test_vaughan_product(small_table):
    first = vaughan_product(1, small_table)
    assert first.product == Fraction(1, 2)
    assert first.log_value == pytest.approx(math.log(2))
    third = vaughan_product(3, small_table)
    assert third.r_k == 5
    assert third.product == Fraction(1, 5)
    assert third.log_value == pytest.approx(math.log(5))


def test_vaughan_product_matches_delta_residual(small_table):
    assert vaughan_product(25, small_table).product == delta_table(97).residual_product


def test_tilde_A0():
    assert tilde_A0(math.exp(6) + 1).exact == Fraction(3, 8)
    assert tilde_A0(math.exp(8) + 1).exact == Fraction(5, 16)
    with pytest.raises(InvalidArgumentError):
        tilde_A0(10)


def test_tilde_A1():
    x = 10**6
    assert tilde_A1(decompose(-3), x).exact == 2
    assert tilde_A1(decompose(-15), x).exact == Fraction(2, 3)
    assert tilde_A1(decompose(21), x).exact == Fraction(4, 5)
    assert tilde_A1(decompose(2), x).exact == 1
    # 101 is not <= log x
    assert tilde_A1(decompose(101), x).exact == 1


def test_twin_prime_constant():
    c2 = twin_prime_C2(10**6)
    assert c2.contains(TWIN_PRIME_CONSTANT)
    approx = tilde_A0_mertens(10**8, c2.approx)
    assert approx == pytest.approx(float(tilde_A0(10**8).exact), rel=0.5)


def test_heuristic_counts():
    assert heuristic_exceptional_count(1000, 1.5) == 2000.0
    assert heuristic_exceptional_count(1000, 5) == pytest.approx(2000 * 1 / 5)
    assert heuristic_exceptional_count(1000, 5, star=True) < heuristic_exceptional_count(1000, 5)
    assert heuristic_max_index(10**6, math.e) == pytest.approx(math.log(2 * 10**6))
    with pytest.raises(InvalidArgumentError):
        heuristic_max_index(10**6, 1.0)
