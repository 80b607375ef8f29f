"""Exact and high-precision arithmetic substrate.

Rationals are ``fractions.Fraction``; ``Poly`` is a univariate polynomial over
the rationals; ``DigammaExpr`` is an element of the rational span of
{1, gamma, ln 2}; BigFloat values are ``mpmath.mpf`` numbers evaluated under an
explicit working precision in bits.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

import mpmath

from core.exceptions import BasisOverflowError, DomainError
from utils.config import get_precision_bits

logger = logging.getLogger(__name__)

Rational = Fraction
BigFloat = mpmath.mpf

Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def format_rational(value: Scalar) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a reduced rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not a rational number: {text!r}") from e


class Poly:
    """Univariate polynomial with rational coefficients, index = power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def indeterminate(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, coefficient: Scalar = 1) -> "Poly":
        if power < 0:
            raise DomainError(f"negative monomial power {power}")
        return cls([0] * power + [coefficient])

    @classmethod
    def interpolate(cls, points: Sequence[Tuple[Scalar, Scalar]]) -> "Poly":
        """Lagrange interpolation through distinct rational abscissae."""
        xs = [Fraction(x) for x, _ in points]
        if len(set(xs)) != len(xs):
            raise DomainError("interpolation abscissae must be distinct")
        result = cls()
        y_var = cls.indeterminate()
        for i, (xi, yi) in enumerate(zip(xs, (Fraction(y) for _, y in points))):
            basis = cls.constant(1)
            denominator = ONE
            for j, xj in enumerate(xs):
                if j != i:
                    basis = basis * (y_var - xj)
                    denominator *= xi - xj
            result = result + basis * (yi / denominator)
        logger.debug(f"Interpolated {len(xs)} points to degree {result.degree}")
        return result

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return ZERO

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self._coeffs), len(other._coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        product = [ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                product[i + j] += a * b
        return Poly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"Poly power must be a nonnegative integer, got {exponent!r}")
        result = Poly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, point: Scalar) -> Fraction:
        """Horner evaluation at a rational point."""
        point = Fraction(point)
        value = ZERO
        for c in reversed(self._coeffs):
            value = value * point + c
        return value

    __call__ = evaluate

    def compose_shift(self, shift: Scalar) -> "Poly":
        """Return p(Y + shift)."""
        moved = Poly.indeterminate() + Fraction(shift)
        result = Poly()
        for c in reversed(self._coeffs):
            result = result * moved + c
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        # constants hash like the scalar they compare equal to
        if self.degree <= 0:
            return hash(self._coeffs[0] if self._coeffs else ZERO)
        return hash(("Poly", self._coeffs))

    def __repr__(self):
        return f"Poly([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = format_rational(magnitude)
            else:
                monomial = "Y" if power == 1 else f"Y^{power}"
                body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_pochhammer(shift: Scalar, length: int) -> Poly:
    """Rising factorial (Y + shift)(Y + shift + 1)...(Y + shift + length - 1)."""
    if length < 0:
        raise DomainError(f"Pochhammer length must be nonnegative, got {length}")
    shift = Fraction(shift)
    result = Poly.constant(1)
    for j in range(length):
        result = result * Poly((shift + j, 1))
    return result


@dataclass(frozen=True)
class DigammaExpr:
    """const_part + gamma_coeff * gamma + ln2_coeff * ln 2, all rational."""

    const_part: Fraction = ZERO
    gamma_coeff: Fraction = ZERO
    ln2_coeff: Fraction = ZERO

    def __post_init__(self):
        for name in ("const_part", "gamma_coeff", "ln2_coeff"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def rational(cls, value: Scalar) -> "DigammaExpr":
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "DigammaExpr":
        """Inverse of ``str``: "a + b*gamma + c*ln2"."""
        pieces = [p.strip() for p in text.split(" + ")]
        if len(pieces) != 3 or not pieces[1].endswith("*gamma") or not pieces[2].endswith("*ln2"):
            raise DomainError(f"not a digamma expression: {text!r}")
        return cls(
            parse_rational(pieces[0]),
            parse_rational(pieces[1][: -len("*gamma")]),
            parse_rational(pieces[2][: -len("*ln2")]),
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DigammaExpr.rational(other)
        if not isinstance(other, DigammaExpr):
            return NotImplemented
        return DigammaExpr(
            self.const_part + other.const_part,
            self.gamma_coeff + other.gamma_coeff,
            self.ln2_coeff + other.ln2_coeff,
        )

    __radd__ = __add__

    def __neg__(self):
        return DigammaExpr(-self.const_part, -self.gamma_coeff, -self.ln2_coeff)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DigammaExpr.rational(other)
        if not isinstance(other, DigammaExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar) -> "DigammaExpr":
        factor = Fraction(factor)
        return DigammaExpr(self.const_part * factor, self.gamma_coeff * factor, self.ln2_coeff * factor)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def evaluate(self) -> BigFloat:
        """Numeric value at the current working precision."""
        return (
            to_bigfloat(self.const_part)
            + to_bigfloat(self.gamma_coeff) * mpmath.euler
            + to_bigfloat(self.ln2_coeff) * mpmath.ln2
        )

    def is_rational(self) -> bool:
        return self.gamma_coeff == 0 and self.ln2_coeff == 0

    def as_rational(self) -> Fraction:
        """The rational value; raises if a gamma or ln2 part survived."""
        if not self.is_rational():
            raise BasisOverflowError(f"expected a rational digamma combination, got {self}")
        return self.const_part

    def __str__(self):
        return (
            f"{format_rational(self.const_part)} + "
            f"{format_rational(self.gamma_coeff)}*gamma + "
            f"{format_rational(self.ln2_coeff)}*ln2"
        )


def digamma_at_integer(k: int) -> DigammaExpr:
    """psi(k) = -gamma + H_{k-1} for a positive integer k."""
    if not isinstance(k, int) or k <= 0:
        raise DomainError(f"digamma has a pole at {k!r}")
    harmonic = sum((Fraction(1, j) for j in range(1, k)), ZERO)
    return DigammaExpr(harmonic, -1, 0)


def digamma_at_half_integer(k: int) -> DigammaExpr:
    """psi(k + 1/2) = -gamma - 2 ln 2 + 2 * sum_{j<=k} 1/(2j - 1)."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"half-integer index must be a nonnegative integer, got {k!r}")
    odd_sum = sum((Fraction(1, 2 * j - 1) for j in range(1, k + 1)), ZERO)
    return DigammaExpr(2 * odd_sum, -1, -2)


def working_precision(bits: int = None):
    """Context manager fixing the mpmath working precision in bits."""
    return mpmath.workprec(bits or get_precision_bits())


def to_bigfloat(value: Union[Scalar, str, BigFloat]) -> BigFloat:
    """Convert at the current working precision (exact rationals are rounded once)."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def parse_bigfloat(text: str) -> BigFloat:
    """Parse a decimal string directly at the current working precision."""
    try:
        return mpmath.mpf(text.strip())
    except (ValueError, TypeError) as e:
        raise DomainError(f"not a decimal number: {text!r}") from e


def format_bigfloat(value: BigFloat, bits: int = None) -> str:
    """Decimal rendering with as many digits as the precision carries."""
    bits = bits or get_precision_bits()
    digits = max(15, int(bits * 0.30103))
    return mpmath.nstr(value, digits)
