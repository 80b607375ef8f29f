"""Stirling numbers of the first kind, L coefficients, p coefficients and g_m.

The indeterminate y stands for c/(2i). Every identity here is a polynomial
identity over the rationals in y, so nothing complex is ever evaluated.
"""
import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from core.algebra import ONE, ZERO, Poly, Scalar, format_rational, poly_pochhammer
from core.exceptions import DomainError, ParityError, PoleError

logger = logging.getLogger(__name__)


class Stirling1Table:
    """Rows of signed Stirling numbers S_n^m, grown on demand.

    x(x-1)...(x-n+1) = sum_m S_n^m x^m.
    """

    def __init__(self):
        self._rows: List[Tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    def row(self, n: int) -> Tuple[int, ...]:
        """(S_n^0, ..., S_n^n)."""
        if n < 0:
            raise DomainError(f"Stirling row index must be nonnegative, got {n}")
        if n >= len(self._rows):
            with self._lock:
                while len(self._rows) <= n:
                    last = len(self._rows) - 1
                    previous = self._rows[last]
                    nxt = []
                    for m in range(last + 2):
                        lower = previous[m - 1] if m >= 1 else 0
                        same = previous[m] if m <= last else 0
                        nxt.append(lower - last * same)
                    self._rows.append(tuple(nxt))
        return self._rows[n]

    def __call__(self, n: int, m: int) -> int:
        if m < 0:
            raise DomainError(f"Stirling column index must be nonnegative, got {m}")
        if m > n:
            return 0
        return self.row(n)[m]

    def as_poly(self, n: int) -> Poly:
        return Poly(self.row(n))


STIRLING1 = Stirling1Table()


def stirling1(n: int, m: int) -> int:
    """Signed Stirling number of the first kind; zero when m > n."""
    if n < 0 or m < 0:
        raise DomainError(f"Stirling indices must be nonnegative, got ({n}, {m})")
    return STIRLING1(n, m)


def falling_factorial_poly(n: int) -> Poly:
    """X(X-1)...(X-n+1) expanded by direct multiplication."""
    return poly_pochhammer(-(n - 1), n) if n > 0 else Poly.constant(1)


@lru_cache(maxsize=None)
def L_coeff(m: int, j: int) -> Fraction:
    """sum_l (l-1)^j / (l! (m-l)!), with 0^0 = 1 at l = 1, j = 0."""
    if m < 0 or j < 0:
        raise DomainError(f"L indices must be nonnegative, got ({m}, {j})")
    # over the common denominator m!, the weights are binomials
    numerator = sum(math.comb(m, l) * (l - 1) ** j for l in range(m + 1))
    return Fraction(numerator, math.factorial(m))


@lru_cache(maxsize=None)
def p_closed(n: int, m: int) -> Fraction:
    """p coefficient from the Stirling/L contraction.

    The contraction is the coefficient of y^n in ``lemma_lhs(m)``; the sign
    (-1)^l with l = (m - n)/2 converts it to p_l(m).
    """
    if n < 1 or m < 1:
        raise DomainError(f"p indices must be positive, got ({n}, {m})")
    if n > m:
        return ZERO
    contraction = sum(
        (math.comb(j + n - 1, n - 1) * L_coeff(m, j) * STIRLING1(m - 1, j + n - 1) for j in range(m - n + 1)),
        ZERO,
    )
    return (-1) ** ((m - n) // 2) * contraction


@lru_cache(maxsize=None)
def lemma_lhs(m: int) -> Poly:
    """y * sum_{l=0}^{m} (1 + y - l)_{m-1} / ((m-l)! l!) as a polynomial in y."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    total = Poly()
    for l in range(m + 1):
        weight = Fraction(1, math.factorial(m - l) * math.factorial(l))
        total = total + poly_pochhammer(1 - l, m - 1) * weight
    return Poly.indeterminate() * total


def p_from_poly(m: int) -> List[Fraction]:
    """[p_0(m), ..., p_{m//2}(m)] read off the expanded polynomial.

    Raises ParityError if a power of the wrong parity survives.
    """
    poly = lemma_lhs(m)
    for power, c in enumerate(poly.coefficients):
        if (m - power) % 2 and c != 0:
            logger.error(f"Wrong-parity coefficient y^{power} = {format_rational(c)} at m={m}")
            raise ParityError(f"coefficient of y^{power} is {format_rational(c)} for m={m}")
    return [(-1) ** l * poly.coeff(m - 2 * l) for l in range(m // 2 + 1)]


def falling_expansion_sides(m: int, l: int) -> Tuple[Poly, Poly, Poly]:
    """Three forms of Gamma(C+l)/Gamma(C+l+1-m) as polynomials in C.

    Direct product (C+l-1)...(C+l-m+1); Stirling expansion in powers of
    (C+l-1); the same with each power expanded binomially.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    c_var = Poly.indeterminate()
    product = Poly.constant(1)
    for i in range(1, m):
        product = product * (c_var + (l - i))
    row = STIRLING1.row(m - 1)
    shifted = STIRLING1.as_poly(m - 1).compose_shift(l - 1)
    binomial = Poly()
    for j, s in enumerate(row):
        for k in range(j + 1):
            binomial = binomial + Poly.monomial(k, s * math.comb(j, k) * (l - 1) ** (j - k))
    return product, shifted, binomial


def g_coeff(m: int, y: Scalar) -> Fraction:
    """(y)_m / m! * 2F1(-m, -y; 1-m-y; -1) as a terminating sum."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    y = Fraction(y)
    prefactor = ONE
    for i in range(m):
        prefactor *= y + i
    prefactor /= math.factorial(m)

    total = ZERO
    term = ONE
    for k in range(m + 1):
        total += term
        if k == m:
            break
        numerator = (k - m) * (k - y)
        if numerator == 0:
            break
        denominator = (1 - m - y + k) * (k + 1)
        if denominator == 0:
            raise PoleError(f"(1-m-y)_k vanishes at k={k + 1} for m={m}, y={format_rational(y)}")
        term = -term * numerator / denominator
    return prefactor * total


def stirling_records(n_max: int) -> List[dict]:
    """{n, m, s} records for n <= n_max, n-major then m."""
    return [{"n": n, "m": m, "s": str(s)} for n in range(n_max + 1) for m, s in enumerate(STIRLING1.row(n))]


def p_records(m_max: int) -> List[dict]:
    """{m, l, n, p} records for 1 <= m <= m_max, from the polynomial route."""
    records = []
    for m in range(1, m_max + 1):
        for l, p in enumerate(p_from_poly(m)):
            records.append({"m": m, "l": l, "n": m - 2 * l, "p": format_rational(p)})
    return records
