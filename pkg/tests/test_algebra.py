from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.algebra import (
    DigammaExpr,
    Poly,
    digamma_at_half_integer,
    digamma_at_integer,
    format_bigfloat,
    format_rational,
    parse_bigfloat,
    parse_rational,
    poly_pochhammer,
    to_bigfloat,
    working_precision,
)
from core.exceptions import BasisOverflowError, DomainError

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, max_size=6).map(Poly)


def test_format_and_parse_rational():
    assert format_rational(Fraction(8, 3)) == "8/3"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational(" 46/15 ") == Fraction(46, 15)
    with pytest.raises(DomainError):
        parse_rational("two thirds")
    with pytest.raises(DomainError):
        parse_rational("1/0")


def test_poly_trims_trailing_zeros():
    assert Poly([1, 2, 0, 0]).coefficients == (1, 2)
    assert Poly([1, 2, 0, 0]).degree == 1
    assert Poly().degree == -1
    assert Poly([0, 0]).is_zero()


def test_poly_str():
    assert str(Poly([0, -2, 1])) == "Y^2 - 2*Y"
    assert str(Poly([Fraction(1, 2)])) == "1/2"
    assert str(Poly()) == "0"


@given(polys, polys, rationals)
@settings(max_examples=60)
def test_poly_ring_operations_match_evaluation(p, q, point):
    assert (p + q)(point) == p(point) + q(point)
    assert (p - q)(point) == p(point) - q(point)
    assert (p * q)(point) == p(point) * q(point)
    assert p * q == q * p


@given(polys, polys, polys)
@settings(max_examples=40)
def test_poly_multiplication_associates_and_distributes(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(rationals)
def test_constant_poly_hashes_like_its_scalar(value):
    assert Poly.constant(value) == value
    assert hash(Poly.constant(value)) == hash(value)
    assert len({Poly.constant(value), value}) == 1


def test_poly_hash_and_equality():
    assert hash(Poly()) == hash(0)
    assert Poly([3]) == 3
    assert Poly([1, 2]) != Poly([1, 2, 3])
    assert len({Poly([1, 2]), Poly([1, 2, 0]), Poly([2, 1])}) == 2


@given(polys, rationals, rationals)
@settings(max_examples=40)
def test_compose_shift(p, shift, point):
    assert p.compose_shift(shift)(point) == p(point + shift)


@given(polys)
@settings(max_examples=30)
def test_interpolate_recovers_polynomial(p):
    points = [(x, p(x)) for x in range(max(p.degree, 0) + 1)]
    assert Poly.interpolate(points) == p


def test_interpolate_rejects_repeated_abscissae():
    with pytest.raises(DomainError):
        Poly.interpolate([(1, 2), (1, 3)])


def test_poly_power():
    y = Poly.indeterminate()
    assert (y + 1) ** 3 == Poly([1, 3, 3, 1])
    assert (y + 1) ** 0 == Poly.constant(1)
    with pytest.raises(DomainError):
        y ** -1


@pytest.mark.parametrize(
    "shift, length, expected",
    [
        (0, 0, Poly([1])),
        (1, 2, Poly([2, 3, 1])),
        (-1, 1, Poly([-1, 1])),
        (1, 3, Poly([6, 11, 6, 1])),
    ],
)
def test_poly_pochhammer(shift, length, expected):
    assert poly_pochhammer(shift, length) == expected


@pytest.mark.parametrize(
    "k, expected",
    [(1, DigammaExpr(0, -1, 0)), (2, DigammaExpr(1, -1, 0)), (4, DigammaExpr(Fraction(11, 6), -1, 0))],
)
def test_digamma_at_integer(k, expected):
    assert digamma_at_integer(k) == expected


@pytest.mark.parametrize("k", [0, -3])
def test_digamma_poles(k):
    with pytest.raises(DomainError):
        digamma_at_integer(k)


@pytest.mark.parametrize(
    "k, expected",
    [
        (0, DigammaExpr(0, -1, -2)),
        (1, DigammaExpr(2, -1, -2)),
        (2, DigammaExpr(Fraction(8, 3), -1, -2)),
    ],
)
def test_digamma_at_half_integer(k, expected):
    assert digamma_at_half_integer(k) == expected


@given(st.integers(min_value=1, max_value=60))
def test_digamma_recurrences(k):
    assert (digamma_at_integer(k + 1) - digamma_at_integer(k)).as_rational() == Fraction(1, k)
    step = digamma_at_half_integer(k) - digamma_at_half_integer(k - 1)
    assert step.as_rational() == 1 / (k - Fraction(1, 2))


@pytest.mark.parametrize("k", [1, 5, 17])
def test_digamma_matches_mpmath(k):
    with working_precision(160):
        assert abs(digamma_at_integer(k).evaluate() - mpmath.digamma(k)) < mpmath.mpf("1e-40")
        half = mpmath.mpf(k) + mpmath.mpf(1) / 2
        assert abs(digamma_at_half_integer(k).evaluate() - mpmath.digamma(half)) < mpmath.mpf("1e-40")


def test_digamma_expr_arithmetic_and_text():
    expr = DigammaExpr(Fraction(1, 3), -1, 2)
    assert DigammaExpr.parse(str(expr)) == expr
    assert str(expr) == "1/3 + -1*gamma + 2*ln2"
    assert expr * 3 == DigammaExpr(1, -3, 6)
    assert expr / 2 == DigammaExpr(Fraction(1, 6), Fraction(-1, 2), 1)
    assert (expr - expr).is_rational()
    with pytest.raises(BasisOverflowError):
        expr.as_rational()
    with pytest.raises(DomainError):
        DigammaExpr.parse("1 + gamma")


def test_bigfloat_helpers():
    with working_precision(256):
        third = to_bigfloat(Fraction(1, 3))
        assert abs(third * 3 - 1) < mpmath.mpf(2) ** -250
        assert parse_bigfloat("0.1") == mpmath.mpf("0.1")
    with pytest.raises(DomainError):
        parse_bigfloat("zero point one")
    with working_precision(64):
        assert format_bigfloat(mpmath.mpf(1) / 4, 64) == "0.25"


@given(st.fractions(min_value=-1, max_value=1, max_denominator=10**6), st.integers(min_value=53, max_value=512))
@settings(max_examples=50)
def test_bigfloat_evaluation_is_bit_identical_across_runs(x, bits):
    expr = DigammaExpr(x, 1, -2)
    with working_precision(bits):
        first = mpmath.atan(to_bigfloat(x))
        second = mpmath.atan(to_bigfloat(x))
        assert first.man_exp == second.man_exp
        assert expr.evaluate().man_exp == expr.evaluate().man_exp
