import math
from fractions import Fraction

import mpmath
import pytest

from core.algebra import Poly, working_precision
from core.coeffs import t_recursive
from core.exceptions import DomainError
from core.series import (
    TABULATED_DERIVATIVE_ROWS,
    FormalSeries,
    arctan_series,
    build_eval_report,
    cauchy_power_oracle,
    derivative_coeff,
    derivative_errata,
    derived_derivative_row,
    difference_chain_coefficient,
    direct_oracle,
    eval_expansion,
    exp_arctan_check,
    expansion_series,
    half_shifted_series,
    nested_chain_series,
    oracle_derivative,
    pi_power_reference,
    pi_power_sum,
    ratio_power_series,
    second_derivative_residual,
    t3_closed_check,
)

F = Fraction


class TestFormalSeries:
    def test_order_and_padding(self):
        s = FormalSeries([1, 2], order=4)
        assert s.order == 4
        assert s.coefficients == (1, 2, 0, 0, 0)
        assert FormalSeries([1, 2, 3, 4], order=1).coefficients == (1, 2)

    def test_arithmetic_truncates_to_smaller_order(self):
        a = FormalSeries([1, 1, 1, 1])
        b = FormalSeries([1, -1])
        assert (a * b).coefficients == (1, 0)
        assert (a + b).order == 1
        assert (a - a).coefficients == (0, 0, 0, 0)
        assert (a * 2)[3] == 2
        assert (1 + a)[0] == 2

    def test_beyond_order_raises(self):
        with pytest.raises(DomainError):
            FormalSeries([1, 2])[5]

    def test_exp(self):
        exp_x = FormalSeries([0, 1], order=5).exp()
        assert exp_x.coefficients == tuple(F(1, math.factorial(j)) for j in range(6))
        with pytest.raises(DomainError):
            FormalSeries([1, 1]).exp()

    def test_power(self):
        s = FormalSeries([1, 1], order=3)
        assert (s ** 3).coefficients == (1, 3, 3, 1)
        assert (s ** 0).coefficients == (1, 0, 0, 0)


@pytest.mark.parametrize(
    "order, expected",
    [(4, [1, 0, F(-1, 3), 0, F(1, 5)]), (0, [1]), (2, [1, 0, F(-1, 3)])],
)
def test_arctan_series(order, expected):
    assert list(arctan_series(order)) == expected


def test_cauchy_power_oracle_examples():
    assert list(cauchy_power_oracle(1, 4)) == [1, 0, F(-1, 3), 0, F(1, 5)]
    assert list(cauchy_power_oracle(2, 2)) == [1, 0, F(-2, 3)]
    for n in range(1, 7):
        assert cauchy_power_oracle(n, 2)[2] == F(-n, 3)


def test_expansion_series_examples(table):
    assert list(expansion_series(1, 4, table)) == [1, 0, F(-1, 3), 0, F(1, 5)]
    assert list(expansion_series(2, 0, table)) == [1]
    assert list(expansion_series(2, 2, table)) == [1, 0, F(-2, 3)]


@pytest.mark.parametrize("n", range(1, 9))
def test_expansion_equals_cauchy_product(table, n):
    series = expansion_series(n, 50, table)
    assert series == cauchy_power_oracle(n, 50)
    assert series.is_even()


@pytest.mark.parametrize("n", range(1, 4))
def test_nested_chain_corollary(n):
    assert half_shifted_series(6) ** n == nested_chain_series(n, 6)


@pytest.mark.parametrize("n", range(1, 5))
def test_difference_chain(table, n):
    powers = half_shifted_series(6) ** n
    for top in range(7):
        chain = difference_chain_coefficient(n, top)
        assert chain == powers[top]
        assert chain == math.factorial(n) * t_recursive(top, n - 1, table) / (top + F(n, 2))


def test_ratio_power_series():
    assert list(ratio_power_series(1, 4)) == [1, 2, 2, 2, 2]
    assert list(ratio_power_series(0, 3)) == [1, 0, 0, 0]
    # ((1+x)/(1-x))^(1/2) squared is (1+x)/(1-x)
    half = ratio_power_series(F(1, 2), 6)
    assert half * half == ratio_power_series(1, 6)


class TestEvalExpansion:
    def test_classic_series(self, table):
        result = eval_expansion(1, "0.5", table=table, precision=256)
        with working_precision(256):
            error = abs(result.value - mpmath.atan(mpmath.mpf("0.5")) / mpmath.mpf("0.5"))
        assert error <= result.tail_bound + mpmath.mpf(2) ** -200
        assert result.rigorous

    def test_close_to_the_boundary(self, table):
        result = eval_expansion(3, "0.9", max_terms=400, table=table, precision=256)
        oracle = direct_oracle(3, "0.9", 256)
        with working_precision(256):
            assert abs(result.value - oracle) <= result.tail_bound + mpmath.mpf(2) ** -200
        assert result.terms_used == 400

    def test_zero(self, table):
        result = eval_expansion(2, 0, table=table)
        assert result.value == 1
        assert result.tail_bound == 0
        assert result.terms_used == 1

    @pytest.mark.parametrize("x", ["1", "-1", "1.5"])
    def test_outside_disc(self, table, x):
        with pytest.raises(DomainError):
            eval_expansion(2, x, table=table)

    @pytest.mark.parametrize("x", ["nan", "-inf", mpmath.mpf("nan")])
    def test_non_finite_x(self, table, x):
        with pytest.raises(DomainError, match="finite"):
            eval_expansion(2, x, table=table)

    def test_stops_early_for_small_x(self, table):
        result = eval_expansion(2, "0.1", table=table, precision=128)
        assert result.terms_used < 100
        assert result.tail_bound < mpmath.mpf(2) ** -128

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("x", ["0.1", "0.3", "0.5", "0.7", "0.9"])
    def test_acceptance_grid(self, table, n, x):
        result = eval_expansion(n, x, max_terms=2000, table=table, precision=256)
        oracle = direct_oracle(n, x, 256)
        with working_precision(256):
            assert abs(result.value - oracle) <= result.tail_bound + mpmath.mpf(2) ** -200

    def test_report(self, table):
        result = eval_expansion(1, "0.5", table=table, precision=256)
        report = build_eval_report(1, "0.5", result, direct_oracle(1, "0.5", 256))
        assert report.within_bound
        assert report.precision_bits == 256
        assert report.model_dump()["x"] == "0.5"
        assert report.terms_used == result.terms_used


def test_direct_oracle():
    with working_precision(128):
        assert abs(direct_oracle(1, 1, 128) - mpmath.pi / 4) < mpmath.mpf("1e-35")
        assert abs(direct_oracle(2, "1.0", 128) - (mpmath.pi / 4) ** 2) < mpmath.mpf("1e-35")
    assert direct_oracle(4, 0) == 1


class TestPiSums:
    def test_first_partial_sum(self, table):
        result = pi_power_sum(1, 1, table=table)
        assert result.value == 2
        assert abs(result.value - pi_power_reference(1)) <= result.tail_bound

    def test_plain_leibniz(self, table):
        result = pi_power_sum(1, 100000, table=table, precision=128)
        with working_precision(128):
            assert abs(result.value - mpmath.pi / 2) < mpmath.mpf("1e-5")
        assert result.rigorous

    @pytest.mark.parametrize("n, tolerance", [(2, "1e-8"), (3, "1e-6")])
    def test_accelerated(self, table, n, tolerance):
        result = pi_power_sum(n, 200, accelerate=True, table=table, precision=256)
        reference = pi_power_reference(n, 256)
        with working_precision(256):
            assert abs(result.value - reference) < mpmath.mpf(tolerance)
            assert abs(result.value - reference) <= 10 * result.tail_bound + mpmath.mpf(2) ** -200
        assert not result.rigorous


@pytest.mark.parametrize("c, x, order", [(1, "0.5", 60), (F(1, 2), "0.25", 40), (2, "0.4", 60)])
def test_exp_arctan(table, c, x, order):
    double_sum, direct = exp_arctan_check(c, x, order=order, table=table, precision=256)
    with working_precision(256):
        assert abs(double_sum - direct) < mpmath.mpf("1e-20")


def test_exp_arctan_trivial(table):
    assert exp_arctan_check(0, "0.3", order=5, table=table) == (1, 1)
    with pytest.raises(DomainError):
        exp_arctan_check(1, "1", table=table)
    with pytest.raises(DomainError, match="finite"):
        exp_arctan_check(1, "nan", table=table)


class TestDerivatives:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_first_row(self, table, n):
        assert derivative_coeff(n, 1, table) == F(-2 * n, 3)

    def test_examples(self, table):
        assert derivative_coeff(2, 2, table) == F(184, 15)
        assert derivative_coeff(1, 3, table) == F(-720, 7)

    def test_against_formal_oracle(self, table):
        for n in range(1, 7):
            for m in range(1, 9):
                assert derivative_coeff(n, m, table) == oracle_derivative(n, m)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_tabulated_rows_survive_rederivation(self, m):
        assert derived_derivative_row(m) == TABULATED_DERIVATIVE_ROWS[m]
        assert derived_derivative_row(m).degree == m

    def test_no_errata(self):
        assert derivative_errata() == []

    def test_row_values(self):
        n = Poly.indeterminate()
        assert TABULATED_DERIVATIVE_ROWS[2](1) == F(24, 5)
        assert TABULATED_DERIVATIVE_ROWS[3](2) == F(-2112, 7)
        assert TABULATED_DERIVATIVE_ROWS[1] == F(-2, 3) * n


@pytest.mark.parametrize("n", [2, 3, 10])
def test_t3_closed(table, n):
    lhs, rhs = t3_closed_check(n, table)
    assert lhs == rhs


def test_t3_closed_value(table):
    assert t3_closed_check(2, table) == (F(352, 105), F(352, 105))
    with pytest.raises(DomainError):
        t3_closed_check(1, table)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("x", ["0.2", "0.5"])
def test_second_derivative_relation(n, x):
    _, _, relative = second_derivative_residual(n, x, precision=256)
    assert relative < mpmath.mpf("1e-10")
