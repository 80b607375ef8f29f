"""Mechanical verifiers for the identities satisfied by t_k(n).

Each ``verify_*`` function walks a parameter grid, computes both sides of one
identity and returns a ``VerifyReport``. Exact suites compare rationals,
polynomials or digamma combinations with ``==``; numeric suites compare
mpmath values against a tolerance and are flagged as such.

Coefficients are read through the shared ``CoeffTable`` so that a corrupted
cell shows up in every identity that consumes it; failure records name the
consumed cells that disagree with the table-free closed form.
"""
import asyncio
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import mpmath
from pydantic import BaseModel, ConfigDict, Field

from core.algebra import (
    ZERO,
    DigammaExpr,
    Poly,
    digamma_at_half_integer,
    digamma_at_integer,
    format_bigfloat,
    format_rational,
    working_precision,
)
from core.coeffs import (
    CoeffTable,
    _resolve,
    bruteforce_feasible,
    fivepart_numerator,
    is_degenerate,
    t_bruteforce,
    t_closed,
    t_digamma_form,
    t_fivepart,
    t_recursive,
    t_update,
)
from core.combinatorics import (
    STIRLING1,
    falling_expansion_sides,
    falling_factorial_poly,
    g_coeff,
    lemma_lhs,
    p_closed,
    p_from_poly,
)
from core.exceptions import DomainError, EmptyGridError, TableConflictError
from core import series
from utils.progress_tracker import ProgressTracker

logger = logging.getLogger(__name__)


class FailureRecord(BaseModel):
    """First failing grid point, with both sides rendered exactly."""

    params: Dict[str, Any]
    lhs: str
    rhs: str
    suspect_cells: List[Tuple[int, int]] = []


class VerifyReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    identity: str
    grid: Dict[str, Any]
    cases: int
    passed: bool = Field(alias="pass")
    failures: int = 0
    first_failure: Optional[FailureRecord] = None
    elapsed_ms: float
    numeric: bool = False
    notes: List[str] = []

    def to_dict(self) -> dict:
        return self.model_dump(by_alias=True)


class _Case:
    """Reads t-cells for one grid point and remembers which ones it used."""

    def __init__(self, table: CoeffTable):
        self.table = table
        self.cells: Set[Tuple[int, int]] = set()

    def t(self, k: int, n: int) -> Fraction:
        if n < 0:
            return ZERO
        self.cells.add((k, n))
        return t_recursive(k, n, self.table)

    def touch(self, k: int, n: int) -> None:
        if n >= 0:
            self.cells.add((k, n))

    def suspects(self) -> List[Tuple[int, int]]:
        bad = []
        for k, n in sorted(self.cells, key=lambda cell: (cell[1], cell[0])):
            stored = self.table.lookup(k, n)
            if stored is not None and stored != t_closed(k, n):
                bad.append((k, n))
        return bad


def _render(value) -> str:
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, mpmath.mpf):
        return format_bigfloat(value)
    return str(value)


def _same(lhs, rhs) -> Tuple[Any, Any, bool]:
    return lhs, rhs, lhs == rhs


def _run_cases(
    identity: str,
    grid: Dict[str, Any],
    names: Sequence[str],
    points: Iterable[Tuple],
    check: Callable[..., Tuple[Any, Any, bool]],
    table: Optional[CoeffTable] = None,
    numeric: bool = False,
    notes: Iterable[str] = (),
) -> VerifyReport:
    """Evaluate `check(case, *params)` over sorted points and build the report."""
    table = _resolve(table)
    points = sorted(points)
    if not points:
        raise EmptyGridError(identity, grid)
    tracker = ProgressTracker(identity, total=len(points))
    failures = 0
    first_failure = None
    for index, params in enumerate(points):
        case = _Case(table)
        try:
            lhs, rhs, ok = check(case, *params)
        except TableConflictError as e:
            case.touch(e.k, e.n)
            lhs, rhs, ok = e.offered, e.stored, False
        if not ok:
            failures += 1
            if first_failure is None:
                first_failure = FailureRecord(
                    params={
                        name: value if isinstance(value, (int, str)) else _render(value)
                        for name, value in zip(names, params)
                    },
                    lhs=_render(lhs),
                    rhs=_render(rhs),
                    suspect_cells=case.suspects(),
                )
        tracker.update_progress(index + 1)

    report = VerifyReport(
        identity=identity,
        grid=grid,
        cases=len(points),
        passed=first_failure is None,
        failures=failures,
        first_failure=first_failure,
        elapsed_ms=round(tracker.elapsed_ms(), 3),
        numeric=numeric,
        notes=list(notes),
    )
    if report.passed:
        tracker.final_status(f"{identity}: {report.cases} cases passed")
    else:
        logger.error(
            f"{identity}: {failures}/{report.cases} cases failed, first at {first_failure.params}"
        )
    return report


# --- sides of each identity -------------------------------------------------


def _half_partial(n: int) -> Fraction:
    return sum((Fraction(2, 2 * m + 1) for m in range(n + 1)), ZERO)


def theorem1_sides(k: int) -> Tuple[Fraction, Fraction]:
    """sum_n (1/(k-n+1/2)) P_n and 2 sum_n (1/(n+1)) P_n with P_n = sum_{m<=n} 1/(m+1/2)."""
    lhs = sum((Fraction(2, 2 * (k - n) + 1) * _half_partial(n) for n in range(k + 1)), ZERO)
    rhs = 2 * sum((Fraction(1, n + 1) * _half_partial(n) for n in range(k + 1)), ZERO)
    return lhs, rhs


def digamma_bracket(k: int) -> Fraction:
    """psi(k+1/2) - psi(1/2) + 2 psi(1) - 2 psi(k+1), reduced to a rational."""
    bracket = (
        digamma_at_half_integer(k)
        - digamma_at_half_integer(0)
        + digamma_at_integer(1) * 2
        - digamma_at_integer(k + 1) * 2
    )
    return bracket.as_rational()


def digamma_corollary_sides(k: int) -> Tuple[DigammaExpr, DigammaExpr]:
    lhs = sum(
        (digamma_at_half_integer(l) * Fraction(2, 2 * (k - l) + 1) for l in range(1, k + 1)),
        DigammaExpr(),
    )
    first = sum((digamma_at_half_integer(l) * Fraction(2, l) for l in range(1, k + 1)), DigammaExpr())
    rhs = first + digamma_at_half_integer(0) * digamma_bracket(k)
    return lhs, rhs


def theorem2_sides(k: int, n: int, t: Callable[[int, int], Fraction]) -> Tuple[Fraction, Fraction]:
    """sum_m t_m(n-1)/(k-m+1/2) and n sum_m t_m(n-1)/(m+n/2)."""
    lhs = sum((Fraction(2, 2 * (k - m) + 1) * t(m, n - 1) for m in range(k + 1)), ZERO)
    rhs = n * sum((t(m, n - 1) / (m + Fraction(n, 2)) for m in range(k + 1)), ZERO)
    return lhs, rhs


def corollary15_sides(k: int, n: int, t: Callable[[int, int], Fraction]) -> Tuple[Fraction, Fraction]:
    half = Fraction(n, 2)
    lhs = sum(
        (t(m, n - 1) / ((k - m + Fraction(1, 2)) * (m + half)) for m in range(k + 1)),
        ZERO,
    )
    rhs = (n + 1) / (k + Fraction(n + 1, 2)) * sum((t(m, n - 1) / (m + half) for m in range(k + 1)), ZERO)
    return lhs, rhs


def sum_rule_value(m: int, t: Callable[[int, int], Fraction]) -> Fraction:
    """sum_{l <= m/2} t_l(m - 2l - 1); equals m."""
    return sum((t(l, m - 2 * l - 1) for l in range(m // 2 + 1)), ZERO)


def lemma_rhs(m: int, t: Callable[[int, int], Fraction]) -> Poly:
    """(2/m) sum_l y^{m-2l} t_l(m-2l-1) as a polynomial in y."""
    total = Poly()
    for l in range(m // 2 + 1):
        total = total + Poly.monomial(m - 2 * l, t(l, m - 2 * l - 1))
    return total * Fraction(2, m)


# --- exact suites -----------------------------------------------------------


def verify_theorem1(k_max: int = 50, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, k):
        return _same(*theorem1_sides(k))

    return _run_cases("theorem1", {"k_max": k_max}, ("k",), ((k,) for k in range(k_max + 1)), check, table)


def verify_digamma_corollary(k_max: int = 50, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, k):
        return _same(*digamma_corollary_sides(k))

    return _run_cases(
        "digamma_corollary", {"k_max": k_max}, ("k",), ((k,) for k in range(1, k_max + 1)), check, table
    )


def verify_theorem2(k_max: int = 25, n_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, k, n):
        return _same(*theorem2_sides(k, n, case.t))

    points = ((k, n) for k in range(k_max + 1) for n in range(2, n_max + 1))
    return _run_cases("theorem2", {"k_max": k_max, "n_max": n_max}, ("k", "n"), points, check, table)


def verify_corollary15(k_max: int = 25, n_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, k, n):
        return _same(*corollary15_sides(k, n, case.t))

    points = ((k, n) for k in range(k_max + 1) for n in range(1, n_max + 1))
    return _run_cases("corollary15", {"k_max": k_max, "n_max": n_max}, ("k", "n"), points, check, table)


def verify_sum_rule(m_max: int = 25, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, m):
        return _same(sum_rule_value(m, case.t), Fraction(m))

    return _run_cases("sum_rule", {"m_max": m_max}, ("m",), ((m,) for m in range(1, m_max + 1)), check, table)


def verify_lemma25(m_max: int = 14, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, m):
        return _same(lemma_lhs(m), lemma_rhs(m, case.t))

    return _run_cases("lemma25", {"m_max": m_max}, ("m",), ((m,) for m in range(1, m_max + 1)), check, table)


def verify_theorem5_6(m_max: int = 14, table: Optional[CoeffTable] = None) -> VerifyReport:
    """t_l(n-1) against both p routes, m = n + 2l."""

    def check(case, m, l):
        n = m - 2 * l
        scale = Fraction(m, 2) * (-1) ** l
        lhs = case.t(l, n - 1)
        from_poly = scale * p_from_poly(m)[l]
        from_closed = scale * p_closed(n, m)
        if from_poly != from_closed:
            return lhs, f"polynomial route {format_rational(from_poly)}, closed route {format_rational(from_closed)}", False
        return _same(lhs, from_poly)

    points = ((m, l) for m in range(1, m_max + 1) for l in range((m - 1) // 2 + 1))
    return _run_cases("theorem5_6", {"m_max": m_max}, ("m", "l"), points, check, table)


def _reference_rows(rows: Iterable[int]) -> Tuple[Dict[int, Poly], List[str]]:
    """Printed rows where they survive re-derivation, derived rows otherwise."""
    references = {}
    notes = []
    for m in rows:
        printed = series.TABULATED_DERIVATIVE_ROWS[m]
        derived = series.derived_derivative_row(m)
        references[m] = derived
        if printed != derived:
            notes.append(f"row m={m}: printed {printed}, re-derived {derived}")
    return references, notes


def verify_table1(n_max: int = 12, table: Optional[CoeffTable] = None) -> VerifyReport:
    rows = sorted(series.TABULATED_DERIVATIVE_ROWS)
    references, notes = _reference_rows(rows)
    table = _resolve(table)

    def check(case, m, n):
        case.touch(m, n - 1)
        return _same(series.derivative_coeff(n, m, table), references[m](n))

    points = ((m, n) for m in rows for n in range(1, n_max + 1))
    return _run_cases("table1", {"n_max": n_max}, ("m", "n"), points, check, table, notes=notes)


def verify_eq22_degenerate(n_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    """The five-term numerator vanishes on the line 2k = n + 2."""

    def check(case, k, n):
        return _same(fivepart_numerator(k, n, case.t), ZERO)

    points = (((n + 2) // 2, n) for n in range(0, n_max + 1, 2))
    return _run_cases("eq22_degenerate", {"n_max": n_max}, ("k", "n"), points, check, table)


def _route_report(
    identity: str, k_max: int, n_max: int, table: Optional[CoeffTable], with_bruteforce: bool
) -> VerifyReport:
    scratch = CoeffTable()
    skipped = []

    def check(case, n, k):
        reference = case.t(k, n)
        routes = {
            "update": t_update(k, n, scratch),
            "closed": t_closed(k, n),
        }
        if with_bruteforce:
            if bruteforce_feasible(k, n):
                routes["bruteforce"] = t_bruteforce(k, n)
            else:
                skipped.append((k, n))
        if not is_degenerate(k, n):
            routes["fivepart"] = t_fivepart(k, n, scratch)
        for method, value in routes.items():
            if value != reference:
                return reference, f"{method} {format_rational(value)}", False
        return _same(reference, reference)

    points = sorted((n, k) for n in range(n_max + 1) for k in range(k_max + 1))
    report = _run_cases(identity, {"k_max": k_max, "n_max": n_max}, ("n", "k"), points, check, table)
    if skipped:
        report.notes.append(
            f"nested sum skipped at {len(skipped)} cells beyond its chain limit, "
            f"first at (k={skipped[0][0]}, n={skipped[0][1]})"
        )
    return report


def verify_coefficients(k_max: int = 12, n_max: int = 8, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Five routes to t_k(n): shared-table recursion against independent ones."""
    return _route_report("coefficients", k_max, n_max, table, with_bruteforce=True)


def verify_coefficient_routes(
    k_max: int = 40, n_max: int = 16, table: Optional[CoeffTable] = None
) -> VerifyReport:
    """Recursion, update, five-term and closed routes over a wide triangle, without the nested sum."""
    return _route_report("coefficient_routes", k_max, n_max, table, with_bruteforce=False)


def verify_expansion(n_max: int = 8, m_max: int = 25, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Coefficients of the expansion against repeated Cauchy products of arctan(x)/x."""
    order = 2 * m_max
    oracles = {n: series.cauchy_power_oracle(n, order) for n in range(1, n_max + 1)}
    table = _resolve(table)

    def check(case, n, power):
        if power % 2:
            return _same(ZERO, oracles[n][power])
        case.touch(power // 2, n - 1)
        return _same(series.expansion_coefficient(n, power // 2, table), oracles[n][power])

    points = ((n, j) for n in range(1, n_max + 1) for j in range(order + 1))
    return _run_cases("expansion", {"n_max": n_max, "m_max": m_max}, ("n", "power"), points, check, table)


def verify_nested_chain(n_max: int = 4, order: int = 8, table: Optional[CoeffTable] = None) -> VerifyReport:
    """(sum x^m/(m+1/2))^n against n! times the non-decreasing chain sum, literally."""
    powers = {n: series.half_shifted_series(order) ** n for n in range(1, n_max + 1)}
    chains = {n: series.nested_chain_series(n, order) for n in range(1, n_max + 1)}

    def check(case, n, power):
        return _same(powers[n][power], chains[n][power])

    points = ((n, j) for n in range(1, n_max + 1) for j in range(order + 1))
    return _run_cases("nested_chain", {"n_max": n_max, "order": order}, ("n", "power"), points, check, table)


def verify_cauchy_chain(n_max: int = 5, m_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Difference-index chains against the power series and the collapsed form."""
    powers = {n: series.half_shifted_series(m_max) ** n for n in range(1, n_max + 1)}

    def check(case, n, top):
        chain = series.difference_chain_coefficient(n, top)
        collapsed = math.factorial(n) * case.t(top, n - 1) / (top + Fraction(n, 2))
        if chain != powers[n][top]:
            return chain, powers[n][top], False
        return _same(chain, collapsed)

    points = ((n, top) for n in range(1, n_max + 1) for top in range(m_max + 1))
    return _run_cases("cauchy_chain", {"n_max": n_max, "m_max": m_max}, ("n", "m"), points, check, table)


def verify_t3_closed(n_max: int = 12, table: Optional[CoeffTable] = None) -> VerifyReport:
    table = _resolve(table)

    def check(case, n):
        case.touch(3, n - 1)
        return _same(*series.t3_closed_check(n, table))

    return _run_cases("t3_closed", {"n_max": n_max}, ("n",), ((n,) for n in range(2, n_max + 1)), check, table)


def verify_digamma_forms(k_max: int = 40, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Orders 1 and 2 as digamma differences at half-integers."""

    def check(case, order, k):
        return _same(t_digamma_form(k, order), case.t(k, order))

    points = ((order, k) for order in (1, 2) for k in range(k_max + 1))
    return _run_cases("digamma_forms", {"k_max": k_max}, ("order", "k"), points, check, table)


def verify_stirling(n_max: int = 12, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, n):
        return _same(falling_factorial_poly(n), STIRLING1.as_poly(n))

    return _run_cases("stirling", {"n_max": n_max}, ("n",), ((n,) for n in range(n_max + 1)), check, table)


def verify_falling_factorial(m_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Gamma(C+l)/Gamma(C+l+1-m) as a product, a Stirling sum and its binomial expansion."""

    def check(case, m, l):
        product, shifted, binomial = falling_expansion_sides(m, l)
        if shifted != binomial:
            return shifted, binomial, False
        return _same(product, shifted)

    points = ((m, l) for m in range(1, m_max + 1) for l in (0, 1, 2))
    return _run_cases(
        "falling_factorial",
        {"m_max": m_max},
        ("m", "l"),
        points,
        check,
        table,
        notes=["product runs over (C+l-1)...(C+l-m+1), the m-1 factors of the gamma ratio"],
    )


def verify_p_routes(m_max: int = 14, table: Optional[CoeffTable] = None) -> VerifyReport:
    def check(case, m, l):
        return _same(p_from_poly(m)[l], p_closed(m - 2 * l, m))

    points = ((m, l) for m in range(1, m_max + 1) for l in range((m - 1) // 2 + 1))
    return _run_cases("p_routes", {"m_max": m_max}, ("m", "l"), points, check, table)


G_PARAMETERS = (Fraction(1), Fraction(2), Fraction(3), Fraction(4), Fraction(5), Fraction(1, 2), Fraction(3, 2))


def verify_g_coefficients(m_max: int = 10, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Terminating hypergeometric g_m(y) against ((1+x)/(1-x))^y."""
    oracles = {y: series.ratio_power_series(y, m_max) for y in G_PARAMETERS}

    def check(case, y, m):
        return _same(g_coeff(m, y), oracles[y][m])

    points = ((y, m) for y in G_PARAMETERS for m in range(m_max + 1))
    return _run_cases("g_coefficients", {"m_max": m_max}, ("y", "m"), points, check, table)


# --- numeric suites ---------------------------------------------------------

EVAL_POINTS = ("0.1", "0.3", "0.5", "0.7", "0.9")


def verify_numeric_expansion(
    n_max: int = 6, max_terms: int = 2000, table: Optional[CoeffTable] = None
) -> VerifyReport:
    """Partial sums against (arctan(x)/x)^n within tail bound + 2^-200."""

    def check(case, n, x):
        result = series.eval_expansion(n, x, max_terms=max_terms, table=table)
        oracle = series.direct_oracle(n, x, result.precision_bits)
        with working_precision(result.precision_bits):
            error = abs(result.value - oracle)
            ok = error <= result.tail_bound + mpmath.mpf(2) ** -200
        return result.value, oracle, bool(ok)

    points = ((n, x) for n in range(1, n_max + 1) for x in EVAL_POINTS)
    return _run_cases(
        "numeric_expansion",
        {"n_max": n_max, "max_terms": max_terms},
        ("n", "x"),
        points,
        check,
        table,
        numeric=True,
    )


PI_SUM_TARGETS = (
    # n, accelerate, terms, tolerance
    (1, False, 100000, "1e-5"),
    (1, True, 200, "1e-30"),
    (2, True, 200, "1e-8"),
    (3, True, 200, "1e-6"),
)


def verify_pi_sums(terms_scale: int = 1, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Plain and Euler-accelerated sums at x = 1 against pi^n/(2^n n!).

    `terms_scale` divides the plain term count (and the tolerance grows with it).
    """
    targets = {(n, accelerate): (terms, tolerance) for n, accelerate, terms, tolerance in PI_SUM_TARGETS}

    def check(case, n, accelerate):
        terms, tolerance = targets[(n, accelerate)]
        if not accelerate:
            terms //= terms_scale
        result = series.pi_power_sum(n, terms, accelerate=accelerate, table=table)
        reference = series.pi_power_reference(n, result.precision_bits)
        with working_precision(result.precision_bits):
            limit = mpmath.mpf(tolerance) * (1 if accelerate else terms_scale)
            ok = abs(result.value - reference) < limit
        return result.value, reference, bool(ok)

    return _run_cases(
        "pi_sums",
        {"terms_scale": terms_scale},
        ("n", "accelerate"),
        targets.keys(),
        check,
        table,
        numeric=True,
        notes=["Euler-transform error estimates are heuristic"],
    )


EXP_POINTS = ((Fraction(1), "0.5"), (Fraction(1, 2), "0.25"), (Fraction(2), "0.4"))


def verify_exp_arctan(order: int = 60, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Truncated double sum of exp(c arctan x) against the direct value."""

    def check(case, c, x):
        double_sum, direct = series.exp_arctan_check(c, x, order=order, table=table)
        with working_precision():
            ok = abs(double_sum - direct) < mpmath.mpf("1e-20")
        return double_sum, direct, bool(ok)

    return _run_cases("exp_arctan", {"order": order}, ("c", "x"), EXP_POINTS, check, table, numeric=True)


def verify_second_derivative(n_max: int = 4, table: Optional[CoeffTable] = None) -> VerifyReport:
    """Central-difference second derivative against the three-term relation."""

    def check(case, n, x):
        lhs, rhs, relative = series.second_derivative_residual(n, x)
        return lhs, rhs, bool(relative < mpmath.mpf("1e-10"))

    points = ((n, x) for n in range(2, n_max + 1) for x in ("0.2", "0.5"))
    return _run_cases(
        "second_derivative", {"n_max": n_max}, ("n", "x"), points, check, table, numeric=True
    )


# --- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[..., VerifyReport]
    grid: Dict[str, int]
    fast_grid: Dict[str, int] = field(default_factory=dict)
    numeric: bool = False

    def arguments(self, fast: bool, overrides: Optional[Dict[str, int]]) -> Dict[str, int]:
        arguments = dict(self.grid)
        if fast:
            arguments.update(self.fast_grid)
        for key, value in (overrides or {}).items():
            if key in arguments and value is not None:
                arguments[key] = value
        return arguments


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("theorem1", verify_theorem1, {"k_max": 50}, {"k_max": 10}),
        Suite("digamma_corollary", verify_digamma_corollary, {"k_max": 50}, {"k_max": 10}),
        Suite("theorem2", verify_theorem2, {"k_max": 25, "n_max": 10}, {"k_max": 8, "n_max": 5}),
        Suite("corollary15", verify_corollary15, {"k_max": 25, "n_max": 10}, {"k_max": 8, "n_max": 5}),
        Suite("sum_rule", verify_sum_rule, {"m_max": 25}, {"m_max": 12}),
        Suite("lemma25", verify_lemma25, {"m_max": 14}, {"m_max": 8}),
        Suite("theorem5_6", verify_theorem5_6, {"m_max": 14}, {"m_max": 8}),
        Suite("table1", verify_table1, {"n_max": 12}, {"n_max": 4}),
        Suite("eq22_degenerate", verify_eq22_degenerate, {"n_max": 10}, {"n_max": 6}),
        Suite("coefficients", verify_coefficients, {"k_max": 12, "n_max": 8}, {"k_max": 6, "n_max": 4}),
        Suite(
            "coefficient_routes",
            verify_coefficient_routes,
            {"k_max": 40, "n_max": 16},
            {"k_max": 20, "n_max": 8},
        ),
        Suite("expansion", verify_expansion, {"n_max": 8, "m_max": 25}, {"n_max": 4, "m_max": 10}),
        Suite("nested_chain", verify_nested_chain, {"n_max": 4, "order": 8}, {"n_max": 3, "order": 5}),
        Suite("cauchy_chain", verify_cauchy_chain, {"n_max": 5, "m_max": 10}, {"n_max": 3, "m_max": 6}),
        Suite("t3_closed", verify_t3_closed, {"n_max": 12}, {"n_max": 6}),
        Suite("digamma_forms", verify_digamma_forms, {"k_max": 40}, {"k_max": 10}),
        Suite("stirling", verify_stirling, {"n_max": 12}, {"n_max": 6}),
        Suite("falling_factorial", verify_falling_factorial, {"m_max": 10}, {"m_max": 5}),
        Suite("p_routes", verify_p_routes, {"m_max": 14}, {"m_max": 8}),
        Suite("g_coefficients", verify_g_coefficients, {"m_max": 10}, {"m_max": 5}),
        Suite(
            "numeric_expansion",
            verify_numeric_expansion,
            {"n_max": 6, "max_terms": 2000},
            {"n_max": 2},
            numeric=True,
        ),
        Suite("pi_sums", verify_pi_sums, {"terms_scale": 1}, {"terms_scale": 10}, numeric=True),
        Suite("exp_arctan", verify_exp_arctan, {"order": 60}, {"order": 40}, numeric=True),
        Suite("second_derivative", verify_second_derivative, {"n_max": 4}, {"n_max": 3}, numeric=True),
    )
}


def _invoke(suite: Suite, fast: bool, overrides, table) -> VerifyReport:
    return suite.run(table=table, **suite.arguments(fast, overrides))


async def _run_exact(suites: List[Suite], jobs: int, fast: bool, overrides, table) -> List[VerifyReport]:
    semaphore = asyncio.Semaphore(jobs)

    async def run_one(suite: Suite) -> VerifyReport:
        async with semaphore:
            return await asyncio.to_thread(_invoke, suite, fast, overrides, table)

    return await asyncio.gather(*(run_one(suite) for suite in suites))


def run_suites(
    names: Optional[Sequence[str]] = None,
    jobs: int = 1,
    overrides: Optional[Dict[str, int]] = None,
    fast: bool = False,
    table: Optional[CoeffTable] = None,
) -> List[VerifyReport]:
    """Run suites by name (all when None) and return reports in registry order.

    Exact suites may run `jobs` at a time in worker threads. Numeric suites
    always run one after another because mpmath precision is process-global.
    """
    names = list(SUITES) if not names else list(names)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s): {', '.join(unknown)}")
    selected = [SUITES[name] for name in SUITES if name in names]
    exact = [suite for suite in selected if not suite.numeric]
    numeric = [suite for suite in selected if suite.numeric]

    reports: Dict[str, VerifyReport] = {}
    if jobs > 1 and len(exact) > 1:
        for suite, report in zip(exact, asyncio.run(_run_exact(exact, jobs, fast, overrides, table))):
            reports[suite.name] = report
    else:
        for suite in exact:
            reports[suite.name] = _invoke(suite, fast, overrides, table)
    for suite in numeric:
        reports[suite.name] = _invoke(suite, fast, overrides, table)

    failed = [name for name, report in reports.items() if not report.passed]
    logger.info(f"Ran {len(reports)} suites, {len(failed)} failed")
    return [reports[suite.name] for suite in selected]
