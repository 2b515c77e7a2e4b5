"""
Exact coefficients in the field of Gaussian rationals extended by sqrt(2).

A :class:`Scalar` is ``(a + b*sqrt2) + i*(c + d*sqrt2)`` with rational
``a, b, c, d``. Writing it as ``P + Q*sqrt2`` with Gaussian rationals
``P = a + i*c`` and ``Q = b + i*d`` keeps the arithmetic short.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union
import math

from .base import ScalarDivisionError

SQRT2_FLOAT = math.sqrt(2.0)

_Gauss = Tuple[Fraction, Fraction]
ScalarLike = Union['Scalar', int, Fraction]


def _gmul(x: _Gauss, y: _Gauss) -> _Gauss:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gadd(x: _Gauss, y: _Gauss) -> _Gauss:
    return (x[0] + y[0], x[1] + y[1])


def _gsub(x: _Gauss, y: _Gauss) -> _Gauss:
    return (x[0] - y[0], x[1] - y[1])


def _gscale(x: _Gauss, k: Fraction) -> _Gauss:
    return (x[0] * k, x[1] * k)


@dataclass(frozen=True)
class Scalar:
    """
    Element of Q(i, sqrt2), stored as four rationals in lowest terms.

    Value is ``(a + b*sqrt2) + i*(c + d*sqrt2)``.
    """
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ('a', 'b', 'c', 'd'):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))

    @classmethod
    def of(cls, value: ScalarLike) -> 'Scalar':
        """Coerce an int, Fraction or Scalar to a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"Cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def _from_parts(cls, p: _Gauss, q: _Gauss) -> 'Scalar':
        return cls(p[0], q[0], p[1], q[1])

    @property
    def _p(self) -> _Gauss:
        return (self.a, self.c)

    @property
    def _q(self) -> _Gauss:
        return (self.b, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_gaussian_rational(self) -> bool:
        """True when no sqrt2 component is present."""
        return not (self.b or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: ScalarLike) -> 'Scalar':
        other = Scalar.of(other)
        return Scalar(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> 'Scalar':
        other = Scalar.of(other)
        return Scalar(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other: ScalarLike) -> 'Scalar':
        return Scalar.of(other) - self

    def __neg__(self) -> 'Scalar':
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: ScalarLike) -> 'Scalar':
        if isinstance(other, (int, Fraction)):
            k = Fraction(other)
            return Scalar(self.a * k, self.b * k, self.c * k, self.d * k)
        if not isinstance(other, Scalar):
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        # (P1 + Q1 r)(P2 + Q2 r) with r*r = 2
        p = _gadd(_gmul(p1, p2), _gscale(_gmul(q1, q2), Fraction(2)))
        q = _gadd(_gmul(p1, q2), _gmul(q1, p2))
        return Scalar._from_parts(p, q)

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        """
        Multiplicative inverse.

        Raises:
            ScalarDivisionError: If the scalar is zero.
        """
        if self.is_zero():
            raise ScalarDivisionError("Division by zero Scalar")
        p, q = self._p, self._q
        # 1/(P + Q r) = (P - Q r) / (P^2 - 2 Q^2); the norm N is a Gaussian rational
        norm = _gsub(_gmul(p, p), _gscale(_gmul(q, q), Fraction(2)))
        modulus = norm[0] * norm[0] + norm[1] * norm[1]
        norm_inv = (norm[0] / modulus, -norm[1] / modulus)
        return Scalar._from_parts(_gmul(p, norm_inv), _gmul((-q[0], -q[1]), norm_inv))

    def __truediv__(self, other: ScalarLike) -> 'Scalar':
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> 'Scalar':
        return Scalar.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> 'Scalar':
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def conj(self) -> 'Scalar':
        """Complex conjugate; sqrt2 is fixed."""
        return Scalar(self.a, self.b, -self.c, -self.d)

    def abs2(self) -> 'Scalar':
        """Squared modulus ``self * conj(self)`` (real, possibly with a sqrt2 part)."""
        return self * self.conj()

    def is_unimodular(self) -> bool:
        return self.abs2() == ONE

    def to_complex(self) -> complex:
        return complex(
            float(self.a) + float(self.b) * SQRT2_FLOAT,
            float(self.c) + float(self.d) * SQRT2_FLOAT,
        )

    def components(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"Scalar({self.a}, {self.b}, {self.c}, {self.d})"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
HALF = Scalar(Fraction(1, 2))
I = Scalar(c=Fraction(1))
SQRT2 = Scalar(b=Fraction(1))
INV_SQRT2 = Scalar(b=Fraction(1, 2))


def scalar_arith(x: ScalarLike, y: ScalarLike, op: str) -> Scalar:
    """
    Exact field arithmetic dispatched by name.

    Args:
        x: Left operand.
        y: Right operand.
        op: One of 'add', 'sub', 'mul', 'div'.

    Returns:
        The canonical result.

    Raises:
        ScalarDivisionError: If op is 'div' and y is zero.
        ValueError: If op is unknown.
    """
    x, y = Scalar.of(x), Scalar.of(y)
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    if op == 'div':
        return x / y
    raise ValueError(f"Unknown scalar operation: '{op}'")
