"""The nested-sum coefficients t_k(n) and the five routes that compute them.

t_k(0) = 1 and t_k(n) = sum_{m<=k} t_m(n-1) / (m + n/2). Every route stores its
results in a shared ``CoeffTable`` tagged with its method name; storing a value
that differs from what another route stored aborts with ``TableConflictError``.
"""
import logging
import math
import threading
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from core.algebra import ONE, ZERO, digamma_at_half_integer, format_rational
from core.combinatorics import p_closed
from core.exceptions import DegenerateRecursionError, DomainError, TableConflictError

logger = logging.getLogger(__name__)

BRUTEFORCE = "bruteforce"
RECURSIVE = "recursive"
UPDATE = "update"
FIVEPART = "fivepart"
CLOSED = "closed"
DIGAMMA = "digamma"
FORCED = "forced"

METHODS = (BRUTEFORCE, RECURSIVE, UPDATE, FIVEPART, CLOSED, DIGAMMA)

# Number of non-decreasing chains the literal nested sum may walk; 12 x 8 needs 125970.
BRUTEFORCE_MAX_CHAINS = 200_000


def base_row_value(n: int) -> Fraction:
    """t_0(n) = 2^n / n!."""
    return Fraction(2 ** n, math.factorial(n))


class CoeffTable:
    """Memoized triangle of t_k(n) keyed by (k, n).

    A cell is a (value, methods) pair replaced atomically, so readers never see
    a half-written cell. Concurrent stores of the same value are idempotent.
    """

    def __init__(self):
        self._entries: Dict[Tuple[int, int], Tuple[Fraction, FrozenSet[str]]] = {}
        self._lock = threading.RLock()

    def __len__(self):
        return len(self._entries)

    def __contains__(self, cell):
        return cell in self._entries

    def lookup(self, k: int, n: int, method: Optional[str] = None) -> Optional[Fraction]:
        """Stored value, optionally only if `method` has produced it."""
        entry = self._entries.get((k, n))
        if entry is None:
            return None
        value, methods = entry
        if method is not None and method not in methods:
            return None
        return value

    def methods(self, k: int, n: int) -> FrozenSet[str]:
        entry = self._entries.get((k, n))
        return entry[1] if entry else frozenset()

    def store(self, k: int, n: int, value: Fraction, method: str) -> Fraction:
        """Record a value computed by `method`, cross-checking earlier routes."""
        if n == 0 and value != ONE:
            raise TableConflictError(k, n, ONE, value, method)
        if k == 0 and value != base_row_value(n):
            raise TableConflictError(k, n, base_row_value(n), value, method)
        with self._lock:
            entry = self._entries.get((k, n))
            if entry is None:
                self._entries[(k, n)] = (value, frozenset((method,)))
                return value
            stored, methods = entry
            if stored != value:
                logger.error(
                    f"Cell ({k}, {n}): {method} gave {format_rational(value)}, "
                    f"{sorted(methods)} stored {format_rational(stored)}"
                )
                raise TableConflictError(k, n, stored, value, method)
            if method not in methods:
                self._entries[(k, n)] = (stored, methods | {method})
            return stored

    def force(self, k: int, n: int, value: Fraction) -> None:
        """Overwrite a cell for every method, bypassing all checks."""
        with self._lock:
            self._entries[(k, n)] = (Fraction(value), frozenset(METHODS) | {FORCED})
        logger.warning(f"Cell ({k}, {n}) forced to {format_rational(value)}")


DEFAULT_TABLE = CoeffTable()


def _resolve(table: Optional[CoeffTable]) -> CoeffTable:
    return DEFAULT_TABLE if table is None else table


def _check_indices(k: int, n: int) -> None:
    if not isinstance(k, int) or not isinstance(n, int) or k < 0 or n < 0:
        raise DomainError(f"coefficient indices must be nonnegative integers, got ({k!r}, {n!r})")


def bruteforce_feasible(k: int, n: int) -> bool:
    """Whether the nested sum for t_k(n) walks at most BRUTEFORCE_MAX_CHAINS chains."""
    return math.comb(k + n, n) <= BRUTEFORCE_MAX_CHAINS


def t_bruteforce(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Literal n-fold nested sum over the C(k+n, n) non-decreasing chains."""
    _check_indices(k, n)
    if not bruteforce_feasible(k, n):
        raise DomainError(
            f"nested sum at (k={k}, n={n}) walks {math.comb(k + n, n)} chains, "
            f"over the limit of {BRUTEFORCE_MAX_CHAINS}"
        )

    def nested(level: int, upper: int) -> Fraction:
        if level == 0:
            return ONE
        total = ZERO
        for m in range(upper + 1):
            total += nested(level - 1, m) / (m + Fraction(level, 2))
        return total

    value = nested(n, k)
    if table is not None:
        table.store(k, n, value, BRUTEFORCE)
    return value


def t_recursive(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Single-sum recursion over the previous order, memoized in the table.

    Orders are filled bottom-up from the highest one whose prefix 0..k is
    already stored, so the depth of the call stack does not grow with n.
    """
    _check_indices(k, n)
    table = _resolve(table)
    cached = table.lookup(k, n, RECURSIVE)
    if cached is not None:
        return cached

    start = n
    while start > 0 and any(table.lookup(m, start - 1, RECURSIVE) is None for m in range(k + 1)):
        start -= 1
    for order in range(start, n + 1):
        half = Fraction(order, 2)
        running = ZERO
        for i in range(k + 1):
            if order > 0:
                running += table.lookup(i, order - 1, RECURSIVE) / (i + half)
            if table.lookup(i, order, RECURSIVE) is None:
                table.store(i, order, running if order > 0 else ONE, RECURSIVE)
    return table.lookup(k, n, RECURSIVE)


def update_row(n: int, count: int, table: Optional[CoeffTable] = None) -> List[Fraction]:
    """First `count` cells of row n, marching k upward from t_0 at every order."""
    if count <= 0:
        return []
    _check_indices(count - 1, n)
    table = _resolve(table)
    previous: List[Fraction] = []
    for order in range(n + 1):
        current: List[Fraction] = []
        for k in range(count):
            cached = table.lookup(k, order, UPDATE)
            if cached is None:
                if order == 0:
                    value = ONE
                elif k == 0:
                    value = base_row_value(order)
                else:
                    value = current[k - 1] + previous[k] / (k + Fraction(order, 2))
                cached = table.store(k, order, value, UPDATE)
            current.append(cached)
        previous = current
    return previous


def t_update(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """March k upward at fixed order from t_0(n) = 2^n/n!."""
    _check_indices(k, n)
    table = _resolve(table)
    cached = table.lookup(k, n, UPDATE)
    if cached is not None:
        return cached
    return update_row(n, k + 1, table)[k]


def _quotient(t: Callable[[int, int], Fraction], m: int, order: int) -> Fraction:
    """t_m(order) / (m + (order+1)/2), extended to order -1 by its limit."""
    if m < 0 or order < -1:
        return ZERO
    if order == -1:
        return ONE if m == 0 else ZERO
    return t(m, order) / (m + Fraction(order + 1, 2))


def fivepart_numerator(k: int, n: int, source: Callable[[int, int], Fraction]) -> Fraction:
    """Numerator of the five-term recurrence at (k, n).

    `source(k, n)` supplies neighbouring coefficients at nonnegative indices.
    Same-order neighbours with negative k vanish; lower-order neighbours enter
    through `_quotient`.
    """

    def same_order(index: int) -> Fraction:
        return source(index, n) if index >= 0 else ZERO

    return (
        -2 * (n - 2 * k + 4) * same_order(k - 1)
        + (n - 2 * k + 6) * same_order(k - 2)
        - 2 * (n + 1) * _quotient(source, k, n - 1)
        + 2 * (n + 2) * _quotient(source, k - 1, n - 1)
        + 2 * _quotient(source, k, n - 2)
    )


def is_degenerate(k: int, n: int) -> bool:
    return 2 * k - n - 2 == 0


def t_fivepart(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Five-term recurrence in k and n; cells on 2k = n + 2 are refused.

    The rectangle i <= k, j <= n is walked order by order with k increasing,
    so every neighbour is known before it is read. Degenerate cells inside
    the rectangle are taken from the single-sum recursion.
    """
    _check_indices(k, n)
    if is_degenerate(k, n):
        raise DegenerateRecursionError(k, n)
    table = _resolve(table)
    cached = table.lookup(k, n, FIVEPART)
    if cached is not None:
        return cached

    values: Dict[Tuple[int, int], Fraction] = {}

    def known(i: int, j: int) -> Fraction:
        return values[(i, j)]

    for j in range(n + 1):
        for i in range(k + 1):
            value = table.lookup(i, j, FIVEPART)
            if value is None:
                if is_degenerate(i, j):
                    value = t_recursive(i, j, table)
                else:
                    value = table.store(i, j, fivepart_numerator(i, j, known) / (2 * i - j - 2), FIVEPART)
            values[(i, j)] = value
    return values[(k, n)]


def t_closed(k: int, n: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Closed form through the Stirling/L contraction, with m = (n + 1) + 2k."""
    _check_indices(k, n)
    m = n + 1 + 2 * k
    value = Fraction(m, 2) * (-1) ** k * p_closed(n + 1, m)
    if table is not None:
        table.store(k, n, value, CLOSED)
    return value


def t_digamma_form(k: int, order: int, table: Optional[CoeffTable] = None) -> Fraction:
    """Orders 1 and 2 as digamma differences at half-integers."""
    _check_indices(k, order)
    if order not in (1, 2):
        raise DomainError(f"digamma form exists for orders 1 and 2, got {order}")
    base = digamma_at_half_integer(0)

    def first_order(m: int) -> Fraction:
        return (digamma_at_half_integer(m + 1) - base).as_rational()

    if order == 1:
        value = first_order(k)
    else:
        value = sum((first_order(j) / (j + 1) for j in range(k + 1)), ZERO)
    if table is not None:
        table.store(k, order, value, DIGAMMA)
    return value


def triangle_records(k_max: int, n_max: int, table: Optional[CoeffTable] = None) -> List[dict]:
    """{k, n, t} records for k <= k_max, n <= n_max, n-major then k."""
    table = _resolve(table)
    records = []
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            records.append({"k": k, "n": n, "t": format_rational(t_recursive(k, n, table))})
    return records


def cross_check_triangle(k_max: int, n_max: int, table: Optional[CoeffTable] = None) -> int:
    """Run the update, closed and five-term routes over the triangle.

    Returns the number of cells checked; any disagreement raises
    ``TableConflictError`` from the table.
    """
    table = _resolve(table)
    checked = 0
    update_row(n_max, k_max + 1, table)
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            t_recursive(k, n, table)
            t_closed(k, n, table)
            if not is_degenerate(k, n):
                t_fivepart(k, n, table)
            checked += 1
    logger.debug(f"Cross-checked {checked} cells up to k={k_max}, n={n_max}")
    return checked
