"""Formal and numeric evaluation of the power series of (arctan(x)/x)^n.

Formal series are exact (rational coefficients, explicit truncation order) and
serve as oracles. Numeric evaluation uses mpmath at an explicit precision and
reports a bound on the truncation error alongside the value.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
from pydantic import BaseModel

from core.algebra import (
    ONE,
    ZERO,
    BigFloat,
    Poly,
    Scalar,
    format_bigfloat,
    format_rational,
    to_bigfloat,
    working_precision,
)
from core.coeffs import CoeffTable, _resolve, t_bruteforce, t_recursive, t_update, update_row
from core.exceptions import DomainError
from utils.config import get_precision_bits

logger = logging.getLogger(__name__)


class FormalSeries:
    """Power series truncated at a fixed order; all order+1 coefficients are exact."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar], order: Optional[int] = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise DomainError(f"truncation order must be nonnegative, got {order}")
        coeffs = coeffs[: order + 1]
        coeffs.extend([ZERO] * (order + 1 - len(coeffs)))
        self._coeffs = tuple(coeffs)

    @classmethod
    def from_function(cls, order: int, coefficient: Callable[[int], Scalar]) -> "FormalSeries":
        return cls((coefficient(j) for j in range(order + 1)), order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, power: int) -> Fraction:
        if not 0 <= power <= self.order:
            raise DomainError(f"coefficient x^{power} is beyond truncation order {self.order}")
        return self._coeffs[power]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalSeries((other,), self.order)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return FormalSeries((self._coeffs[j] + other._coeffs[j] for j in range(order + 1)), order)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries((-c for c in self._coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalSeries((other,), self.order)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            return FormalSeries((c * factor for c in self._coeffs), self.order)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        order = min(self.order, other.order)
        product = [ZERO] * (order + 1)
        for i in range(order + 1):
            a = self._coeffs[i]
            if a == 0:
                continue
            for j in range(order + 1 - i):
                product[i + j] += a * other._coeffs[j]
        return FormalSeries(product, order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        """Integer power by repeated Cauchy products."""
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"series power must be a nonnegative integer, got {exponent!r}")
        result = FormalSeries((ONE,), self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def exp(self) -> "FormalSeries":
        """exp of a series without constant term: k f_k = sum_j j g_j f_{k-j}."""
        if self._coeffs[0] != 0:
            raise DomainError("formal exp needs a zero constant term")
        result = [ONE]
        for k in range(1, self.order + 1):
            acc = sum((j * self._coeffs[j] * result[k - j] for j in range(1, k + 1)), ZERO)
            result.append(acc / k)
        return FormalSeries(result, self.order)

    def is_even(self) -> bool:
        return all(c == 0 for c in self._coeffs[1::2])

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(("FormalSeries", self._coeffs))

    def __repr__(self):
        return f"FormalSeries([{', '.join(format_rational(c) for c in self._coeffs)}])"


def arctan_series(order: int) -> FormalSeries:
    """arctan(x)/x: coefficient of x^{2m} is (-1)^m/(2m+1), odd ones zero."""
    return FormalSeries.from_function(
        order, lambda j: Fraction((-1) ** (j // 2), j + 1) if j % 2 == 0 else ZERO
    )


def half_shifted_series(order: int) -> FormalSeries:
    """sum_m x^m / (m + 1/2)."""
    return FormalSeries.from_function(order, lambda m: Fraction(2, 2 * m + 1))


def cauchy_power_oracle(n: int, order: int) -> FormalSeries:
    """(arctan(x)/x)^n by repeated exact Cauchy products."""
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")
    return arctan_series(order) ** n


def expansion_coefficient(n: int, m: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Coefficient of x^{2m} in (arctan(x)/x)^n built from t_m(n-1)."""
    return (
        (-1) ** m
        * Fraction(math.factorial(n), 2 ** n)
        * t_recursive(m, n - 1, table)
        / (m + Fraction(n, 2))
    )


def expansion_series(n: int, order: int, table: Optional[CoeffTable] = None) -> FormalSeries:
    """The same power assembled from the nested-sum coefficients."""
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")
    return FormalSeries.from_function(
        order, lambda j: expansion_coefficient(n, j // 2, table) if j % 2 == 0 else ZERO
    )


def nested_chain_series(n: int, order: int) -> FormalSeries:
    """n! * sum over 0 <= m_1 <= ... <= m_n of x^{m_n} / prod_j (m_j + j/2).

    Summed literally over non-decreasing chains; only small n and order are
    practical.
    """
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")
    factorial = math.factorial(n)
    return FormalSeries.from_function(
        order, lambda top: factorial * t_bruteforce(top, n - 1) / (top + Fraction(n, 2))
    )


def difference_chain_coefficient(n: int, top: int) -> Fraction:
    """Coefficient of u^top in (sum_m u^m/(m+1/2))^n written with difference indices.

    sum over m_1 <= ... <= m_{n-1} <= top of
    prod_j 1/(m_{j+1} - m_j + 1/2) * 1/(m_1 + 1/2), with m_n = top.
    """
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")

    def chain(level: int, upper: int) -> Fraction:
        if level == 1:
            return Fraction(2, 2 * upper + 1)
        return sum(
            (Fraction(2, 2 * (upper - m) + 1) * chain(level - 1, m) for m in range(upper + 1)),
            ZERO,
        )

    return chain(n, top)


def ratio_power_series(y: Scalar, order: int) -> FormalSeries:
    """((1+x)/(1-x))^y = exp(2y * artanh(x)) for rational y."""
    y = Fraction(y)
    log_ratio = FormalSeries.from_function(order, lambda j: Fraction(2, j) if j % 2 else ZERO)
    return (log_ratio * y).exp()


@dataclass(frozen=True)
class EvalResult:
    """Partial sum with a bound on the omitted remainder.

    `rigorous` is False when the bound rests on a heuristic (ratio domination
    or the last Euler-transform term).
    """

    value: BigFloat
    terms_used: int
    tail_bound: BigFloat
    rigorous: bool
    precision_bits: int


class EvalReport(BaseModel):
    """JSON record of one evaluation compared with its oracle."""

    n: int
    x: str
    precision_bits: int
    terms_used: int
    value: str
    tail_bound: str
    rigorous: bool
    oracle: str
    abs_error: str
    within_bound: bool


def _tail_bound(magnitudes: Sequence[BigFloat], next_magnitude: BigFloat) -> Tuple[BigFloat, bool]:
    """Bound on the remainder of an alternating sum after len(magnitudes) terms."""
    window = list(magnitudes) + [next_magnitude]
    run_start = len(window) - 1
    while run_start > 0 and window[run_start] <= window[run_start - 1]:
        run_start -= 1
    if len(window) - run_start >= 3:
        return next_magnitude, True

    recent = [
        window[i + 1] / window[i]
        for i in range(max(0, len(window) - 9), len(window) - 1)
        if window[i] != 0
    ]
    ratio = max(recent) if recent else mpmath.inf
    if ratio < 1:
        logger.warning(f"Magnitudes not yet decreasing; using ratio bound with r={mpmath.nstr(ratio, 8)}")
        return window[-2] * ratio / (1 - ratio), False
    logger.warning("Terms are not decaying; tail bound is infinite")
    return mpmath.inf, False


class _GrowingRow:
    """Row of t_m(order) extended on demand through the update route."""

    def __init__(self, order: int, table: CoeffTable, limit: int):
        self.order = order
        self.table = table
        self.limit = limit
        self.values: List[Fraction] = []

    def __getitem__(self, m: int) -> Fraction:
        if m >= len(self.values):
            count = min(max(2 * len(self.values), m + 1, 64), self.limit)
            self.values = update_row(self.order, count, self.table)
        return self.values[m]


def eval_expansion(
    n: int,
    x,
    max_terms: int = 2000,
    table: Optional[CoeffTable] = None,
    precision: Optional[int] = None,
) -> EvalResult:
    """Partial sum of the expansion at |x| < 1 with a remainder bound."""
    if n < 1 or max_terms < 1:
        raise DomainError(f"need n >= 1 and max_terms >= 1, got n={n}, max_terms={max_terms}")
    bits = precision or get_precision_bits()
    table = _resolve(table)
    with working_precision(bits):
        x = to_bigfloat(x)
        if not mpmath.isfinite(x):
            raise DomainError(f"x must be finite, got {x}")
        if abs(x) >= 1:
            raise DomainError(f"series converges for |x| < 1 only, got x={mpmath.nstr(x, 20)}; use the x = 1 sum")
        if x == 0:
            return EvalResult(mpmath.mpf(1), 1, mpmath.mpf(0), True, bits)

        row = _GrowingRow(n - 1, table, max_terms + 1)
        prefactor = Fraction(math.factorial(n), 2 ** n)
        half = Fraction(n, 2)
        x2 = x * x
        threshold = mpmath.mpf(2) ** (-(bits + 8))
        power = mpmath.mpf(1)
        total = mpmath.mpf(0)
        magnitudes: List[BigFloat] = []
        used = 0
        for m in range(max_terms):
            magnitude = to_bigfloat(prefactor * row[m] / (m + half)) * power
            total = total + magnitude if m % 2 == 0 else total - magnitude
            magnitudes.append(magnitude)
            used = m + 1
            power *= x2
            if magnitude < threshold and len(magnitudes) >= 3 and magnitudes[-1] <= magnitudes[-2] <= magnitudes[-3]:
                break

        next_magnitude = to_bigfloat(prefactor * row[used] / (used + half)) * power
        tail, rigorous = _tail_bound(magnitudes, next_magnitude)
    logger.debug(f"eval n={n}: {used} terms, tail {mpmath.nstr(tail, 5)}")
    return EvalResult(total, used, tail, rigorous, bits)


def _ratio_power(n: int, x: BigFloat) -> BigFloat:
    """(arctan(x)/x)^n for any integer n, with the value 1 at x = 0."""
    if x == 0:
        return mpmath.mpf(1)
    return (mpmath.atan(x) / x) ** n


def direct_oracle(n: int, x, precision: Optional[int] = None) -> BigFloat:
    """(arctan(x)/x)^n straight from a high-precision arctan."""
    if n < 0:
        raise DomainError(f"power must be nonnegative, got {n}")
    with working_precision(precision):
        return _ratio_power(n, to_bigfloat(x))


def pi_power_reference(n: int, precision: Optional[int] = None) -> BigFloat:
    """pi^n / (2^n n!)."""
    with working_precision(precision):
        return mpmath.pi ** n / (mpmath.mpf(2) ** n * math.factorial(n))


def pi_power_sum(
    n: int,
    max_terms: int,
    accelerate: bool = False,
    table: Optional[CoeffTable] = None,
    precision: Optional[int] = None,
) -> EvalResult:
    """The expansion at x = 1: sum_m (-1)^m t_m(n-1)/(m + n/2).

    Plain partial sums converge slowly; `accelerate` applies the Euler
    transform to the same terms, whose error estimate is heuristic.
    """
    if n < 1 or max_terms < 1:
        raise DomainError(f"need n >= 1 and max_terms >= 1, got n={n}, max_terms={max_terms}")
    bits = precision or get_precision_bits()
    row = update_row(n - 1, max_terms + 1, table)
    half = Fraction(n, 2)
    terms = [row[m] / (m + half) for m in range(max_terms + 1)]

    if not accelerate:
        with working_precision(bits):
            total = mpmath.mpf(0)
            magnitudes = []
            for m in range(max_terms):
                magnitude = to_bigfloat(terms[m])
                total = total + magnitude if m % 2 == 0 else total - magnitude
                magnitudes.append(magnitude)
            tail, rigorous = _tail_bound(magnitudes, to_bigfloat(terms[max_terms]))
        return EvalResult(total, max_terms, tail, rigorous, bits)

    # k-th differences cancel about k bits, so carry that many extra
    with working_precision(bits + max_terms + 64):
        differences = [to_bigfloat(t) for t in terms[:max_terms]]
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        scale = mpmath.mpf(2)
        for k in range(max_terms):
            contribution = differences[0] / scale
            total = total + contribution if k % 2 == 0 else total - contribution
            last = abs(contribution)
            differences = [differences[i + 1] - differences[i] for i in range(len(differences) - 1)]
            scale *= 2
    with working_precision(bits):
        value = +total
        tail = +last
    logger.debug(f"Euler transform n={n}: {max_terms} terms, last term {mpmath.nstr(tail, 5)}")
    return EvalResult(value, max_terms, tail, False, bits)


def exp_arctan_check(
    c: Scalar,
    x,
    order: int = 60,
    table: Optional[CoeffTable] = None,
    precision: Optional[int] = None,
) -> Tuple[BigFloat, BigFloat]:
    """(double sum of exp(c*arctan(x)) truncated at `order`, direct value)."""
    if order < 1:
        raise DomainError(f"order must be positive, got {order}")
    c = Fraction(c)
    table = _resolve(table)
    update_row(order - 1, order + 1, table)
    with working_precision(precision):
        x = to_bigfloat(x)
        if not mpmath.isfinite(x) or abs(x) >= 1:
            raise DomainError(f"|x| must be finite and below 1, got {mpmath.nstr(x, 20)}")
        minus_x2 = -x * x
        outer = to_bigfloat(c) * x / 2
        total = mpmath.mpf(1)
        outer_power = mpmath.mpf(1)
        for n in range(1, order + 1):
            outer_power *= outer
            inner = mpmath.mpf(0)
            inner_power = mpmath.mpf(1)
            half = Fraction(n, 2)
            for m in range(order + 1):
                inner += to_bigfloat(t_update(m, n - 1, table) / (m + half)) * inner_power
                inner_power *= minus_x2
            total += outer_power * inner
        direct = mpmath.exp(to_bigfloat(c) * mpmath.atan(x))
    return total, direct


def derivative_coeff(n: int, m: int, table: Optional[CoeffTable] = None) -> Fraction:
    """The 2m-th derivative of (arctan(x)/x)^n at x = 0."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got ({n}, {m})")
    return math.factorial(2 * m) * expansion_coefficient(n, m, table)


def oracle_derivative(n: int, m: int) -> Fraction:
    """(2m)! times the x^{2m} coefficient of the Cauchy-product oracle."""
    if n == 0:
        return ZERO
    return math.factorial(2 * m) * cauchy_power_oracle(n, 2 * m)[2 * m]


def t3_closed_check(n: int, table: Optional[CoeffTable] = None) -> Tuple[Fraction, Fraction]:
    """(t_3(n-1), its closed polynomial form) for n >= 2."""
    if n < 2:
        raise DomainError(f"closed form for t_3 needs n >= 2, got {n}")
    closed = (
        Fraction(2 ** (n + 3), 63 * math.factorial(n - 1) * math.factorial(6))
        * (3 + Fraction(n, 2))
        * (35 * n * n + 273 * n + 502)
    )
    return t_recursive(3, n - 1, table), closed


_N = Poly.indeterminate()

TABULATED_DERIVATIVE_ROWS: Dict[int, Poly] = {
    1: Fraction(-2, 3) * _N,
    2: Fraction(4, 15) * _N * (5 * _N + 13),
    3: Fraction(-8, 63) * _N * (35 * _N ** 2 + 273 * _N + 502),
    4: Fraction(16, 135) * _N * (175 * _N ** 3 + 2730 * _N ** 2 + 13589 * _N + 21306),
    5: Fraction(-32, 99) * _N * (385 * _N ** 4 + 10010 * _N ** 3 + 94259 * _N ** 2 + 377938 * _N + 538008),
}


@lru_cache(maxsize=None)
def derived_derivative_row(m: int) -> Poly:
    """Row m as a degree-m polynomial in n, interpolated from the formal oracle."""
    if m < 1:
        raise DomainError(f"row index must be positive, got {m}")
    return Poly.interpolate([(n, oracle_derivative(n, m)) for n in range(m + 1)])


def derivative_errata(rows: Optional[Iterable[int]] = None) -> List[dict]:
    """Tabulated rows that differ from their re-derived polynomial."""
    errata = []
    for m in rows or sorted(TABULATED_DERIVATIVE_ROWS):
        tabulated = TABULATED_DERIVATIVE_ROWS[m]
        derived = derived_derivative_row(m)
        if tabulated != derived:
            logger.warning(f"Derivative row {m}: tabulated {tabulated} but derived {derived}")
            errata.append({"m": m, "tabulated": str(tabulated), "derived": str(derived)})
    return errata


def second_derivative_residual(
    n: int, x, step=None, precision: Optional[int] = None
) -> Tuple[BigFloat, BigFloat, BigFloat]:
    """Check the second-order relation between T(n), T(n-1) and T(n-2).

    (x^2/n) T''(n, x) = (n+1) T(n, x) - 2(n + (n+1)x^2)/(1+x^2)^2 T(n-1, x)
                        + (n-1)/(1+x^2)^2 T(n-2, x)
    with T'' from a central difference. Returns (lhs, rhs, relative error).
    """
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")
    with working_precision(precision):
        x = to_bigfloat(x)
        h = to_bigfloat(step) if step is not None else mpmath.mpf(2) ** -30
        centre = _ratio_power(n, x)
        second = (_ratio_power(n, x + h) - 2 * centre + _ratio_power(n, x - h)) / (h * h)
        lhs = x * x / n * second
        weight = 1 / (1 + x * x) ** 2
        rhs = (
            (n + 1) * centre
            - 2 * (n + (n + 1) * x * x) * weight * _ratio_power(n - 1, x)
            + (n - 1) * weight * _ratio_power(n - 2, x)
        )
        relative = abs(lhs - rhs) / abs(rhs) if rhs != 0 else abs(lhs)
    return lhs, rhs, relative


def build_eval_report(n: int, x_text: str, result: EvalResult, oracle: BigFloat) -> EvalReport:
    """Compare an evaluation with its oracle; slack covers rounding at the working precision."""
    bits = result.precision_bits
    with working_precision(bits):
        error = abs(result.value - oracle)
        slack = mpmath.mpf(2) ** (-(bits - 56))
        within = error <= result.tail_bound + slack
    return EvalReport(
        n=n,
        x=x_text,
        precision_bits=bits,
        terms_used=result.terms_used,
        value=format_bigfloat(result.value, bits),
        tail_bound=format_bigfloat(result.tail_bound, bits),
        rigorous=result.rigorous,
        oracle=format_bigfloat(oracle, bits),
        abs_error=format_bigfloat(error, bits),
        within_bound=bool(within),
    )
