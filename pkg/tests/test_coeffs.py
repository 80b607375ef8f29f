from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.coeffs import (
    BRUTEFORCE,
    CLOSED,
    FORCED,
    RECURSIVE,
    UPDATE,
    BRUTEFORCE_MAX_CHAINS,
    CoeffTable,
    bruteforce_feasible,
    cross_check_triangle,
    fivepart_numerator,
    is_degenerate,
    t_bruteforce,
    t_closed,
    t_digamma_form,
    t_fivepart,
    t_recursive,
    t_update,
    triangle_records,
    update_row,
)
from core.exceptions import DegenerateRecursionError, DomainError, TableConflictError


@pytest.mark.parametrize(
    "k, n, expected",
    [(5, 0, 1), (0, 3, Fraction(4, 3)), (1, 1, Fraction(8, 3))],
)
def test_bruteforce_examples(k, n, expected):
    assert t_bruteforce(k, n) == expected


@pytest.mark.parametrize(
    "k, n, expected",
    [(1, 2, Fraction(10, 3)), (0, 4, Fraction(2, 3)), (3, 0, 1)],
)
def test_recursive_examples(table, k, n, expected):
    assert t_recursive(k, n, table) == expected
    assert RECURSIVE in table.methods(k, n)


@pytest.mark.parametrize(
    "k, n, expected",
    [(1, 1, Fraction(8, 3)), (2, 1, Fraction(46, 15)), (0, 2, 2)],
)
def test_update_examples(table, k, n, expected):
    assert t_update(k, n, table) == expected


def test_fivepart_examples(table):
    assert t_fivepart(1, 1, table) == Fraction(8, 3)
    assert t_fivepart(3, 2, table) == t_recursive(3, 2, table)
    with pytest.raises(DegenerateRecursionError):
        t_fivepart(2, 2, table)


@pytest.mark.parametrize("k, n", [(0, 0), (0, 1), (2, 1), (1, 2), (4, 5), (7, 3)])
def test_fivepart_near_boundary(table, k, n):
    assert t_fivepart(k, n, table) == t_bruteforce(k, n)


@pytest.mark.parametrize(
    "k, n, expected",
    [(0, 1, 2), (1, 1, Fraction(8, 3)), (2, 0, 1)],
)
def test_closed_examples(k, n, expected):
    assert t_closed(k, n) == expected


@pytest.mark.parametrize(
    "k, order, expected",
    [(1, 1, Fraction(8, 3)), (0, 1, 2), (1, 2, Fraction(10, 3))],
)
def test_digamma_form_examples(k, order, expected):
    assert t_digamma_form(k, order) == expected


def test_digamma_form_rejects_other_orders():
    with pytest.raises(DomainError):
        t_digamma_form(1, 3)


def test_five_routes_agree(table):
    for n in range(9):
        for k in range(13):
            reference = t_recursive(k, n, table)
            assert t_update(k, n, table) == reference
            assert t_closed(k, n) == reference
            if not is_degenerate(k, n):
                assert t_fivepart(k, n, table) == reference
            if k <= 6 and n <= 5:
                assert t_bruteforce(k, n) == reference


@pytest.mark.slow
def test_bruteforce_agrees_on_full_grid(table):
    for n in range(9):
        for k in range(13):
            assert t_bruteforce(k, n, table) == t_update(k, n, table)


def test_bruteforce_refuses_oversized_sums():
    assert bruteforce_feasible(12, 8)
    assert not bruteforce_feasible(20, 10)
    with pytest.raises(DomainError, match=str(BRUTEFORCE_MAX_CHAINS)):
        t_bruteforce(20, 10)


def test_routes_reach_high_order_without_deep_recursion():
    table = CoeffTable()
    assert t_recursive(2, 400, table) == t_update(2, 400, table)
    wide = CoeffTable()
    assert t_fivepart(400, 1, wide) == t_recursive(400, 1, wide)
    assert t_fivepart(3, 300, wide) == t_update(3, 300, wide)


def test_degenerate_numerator_vanishes(table):
    for n in range(0, 12, 2):
        k = (n + 2) // 2
        assert fivepart_numerator(k, n, lambda i, j: t_recursive(i, j, table)) == 0


def test_recursive_resumes_from_stored_prefix(table):
    t_recursive(1, 5, table)
    assert t_recursive(4, 5, table) == t_update(4, 5, CoeffTable())
    assert t_recursive(4, 2, table) == t_closed(4, 2)


@pytest.mark.parametrize("k, n", [(-1, 0), (0, -2), (1.5, 1)])
def test_bad_indices(table, k, n):
    with pytest.raises(DomainError):
        t_recursive(k, n, table)


def test_update_row_prefix(table):
    row = update_row(2, 4, table)
    assert row == [t_recursive(k, 2, table) for k in range(4)]
    assert update_row(2, 0, table) == []
    assert UPDATE in table.methods(3, 2)


@given(st.integers(min_value=0, max_value=20), st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_coefficients_positive_and_increasing_in_k(k, n):
    table = CoeffTable()
    assert t_recursive(k, n, table) > 0
    assert t_recursive(k + 1, n, table) > t_recursive(k, n, table)


def test_store_rejects_base_row_violations(table):
    with pytest.raises(TableConflictError):
        table.store(3, 0, Fraction(2), RECURSIVE)
    with pytest.raises(TableConflictError):
        table.store(0, 2, Fraction(3), RECURSIVE)


def test_store_detects_conflicts_between_methods(table):
    table.store(1, 1, Fraction(8, 3), BRUTEFORCE)
    assert table.store(1, 1, Fraction(8, 3), CLOSED) == Fraction(8, 3)
    assert table.methods(1, 1) == {BRUTEFORCE, CLOSED}
    with pytest.raises(TableConflictError) as excinfo:
        table.store(1, 1, Fraction(3), UPDATE)
    assert (excinfo.value.k, excinfo.value.n) == (1, 1)


def test_force_overrides_every_method(table):
    table.force(2, 3, Fraction(1, 7))
    assert table.lookup(2, 3, RECURSIVE) == Fraction(1, 7)
    assert FORCED in table.methods(2, 3)
    assert t_recursive(2, 3, table) == Fraction(1, 7)


def test_cross_check_and_records(table):
    assert cross_check_triangle(4, 3, table) == 20
    records = triangle_records(2, 1, table)
    assert records[0] == {"k": 0, "n": 0, "t": "1"}
    assert {"k": 1, "n": 1, "t": "8/3"} in records
    assert [(r["n"], r["k"]) for r in records] == sorted((r["n"], r["k"]) for r in records)
    assert len(table) == 20
    assert {RECURSIVE, UPDATE, CLOSED} <= table.methods(4, 3)


def test_cross_check_reports_wrong_stored_cell(table):
    table.store(2, 2, Fraction(5), RECURSIVE)
    with pytest.raises(TableConflictError) as excinfo:
        cross_check_triangle(3, 3, table)
    assert (excinfo.value.k, excinfo.value.n) == (2, 2)
