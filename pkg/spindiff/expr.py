"""
Canonical exponential sums over the four angles.

An :class:`Expr` is a finite sum ``sum_k c_k * exp(i*(m . angles)/2)`` where the
frequencies ``m`` are integer 4-vectors (half-angle units) over
``(theta, phi, theta_p, phi_p)`` and the ``c_k`` are exact :class:`Scalar`
values. Exponential atoms are linearly independent, so two Exprs are equal as
functions exactly when their term maps are equal.
"""
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union
import logging

import numpy as np

from .scalar import ONE, ZERO, Scalar, ScalarLike

logger = logging.getLogger(__name__)

VARIABLES = ('theta', 'phi', 'theta_p', 'phi_p')
DIFF_VARIABLES = ('theta', 'phi')
SUBST_VARIABLES = ('theta_p', 'phi_p')


class FreqVec(NamedTuple):
    """Frequency vector in half-angle units; tuple order gives the canonical total order."""
    m_theta: int = 0
    m_phi: int = 0
    m_theta_p: int = 0
    m_phi_p: int = 0

    @classmethod
    def of(cls, value: Union['FreqVec', Iterable[int]]) -> 'FreqVec':
        """Build from a FreqVec or an iterable of up to four integers (padded with zeros)."""
        if isinstance(value, FreqVec):
            return value
        items = [int(v) for v in value]
        if len(items) > 4:
            raise ValueError(f"Frequency vector has at most 4 entries, got {len(items)}")
        return cls(*items)

    def __neg__(self) -> 'FreqVec':
        return FreqVec(-self[0], -self[1], -self[2], -self[3])

    def plus(self, other: 'FreqVec') -> 'FreqVec':
        return FreqVec(self[0] + other[0], self[1] + other[1],
                       self[2] + other[2], self[3] + other[3])

    def is_zero(self) -> bool:
        return not any(self)


ZERO_FREQ = FreqVec()


def _var_index(var: str) -> int:
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise ValueError(f"Unknown angle variable: '{var}'. Available: {', '.join(VARIABLES)}")


class Expr:
    """
    Immutable canonical sum of exponential atoms with Scalar coefficients.

    No stored coefficient is zero. Supports ``+``, ``-``, ``*`` with other Exprs
    and with Scalars/ints/Fractions.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Mapping[FreqVec, ScalarLike] = None):
        clean: Dict[FreqVec, Scalar] = {}
        for freq, coeff in (terms or {}).items():
            freq = FreqVec.of(freq)
            total = clean.get(freq, ZERO) + Scalar.of(coeff)
            if total:
                clean[freq] = total
            else:
                clean.pop(freq, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[FreqVec, Scalar]) -> 'Expr':
        """Wrap an already-canonical dict without re-checking it."""
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: ScalarLike) -> 'Expr':
        return cls({ZERO_FREQ: value})

    @classmethod
    def atom(cls, freq: Union[FreqVec, Iterable[int]], coeff: ScalarLike = ONE) -> 'Expr':
        """Single term ``coeff * exp(i*(freq . angles)/2)``."""
        return cls({FreqVec.of(freq): coeff})

    @property
    def terms(self) -> Dict[FreqVec, Scalar]:
        """Copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[FreqVec, Scalar]]:
        """Terms in canonical (ascending FreqVec) order."""
        for freq in sorted(self._terms):
            yield freq, self._terms[freq]

    def coeff(self, freq: FreqVec) -> Scalar:
        return self._terms.get(freq, ZERO)

    def frequencies(self) -> Tuple[FreqVec, ...]:
        return tuple(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(freq.is_zero() for freq in self._terms)

    def constant_value(self) -> Scalar:
        """Coefficient of the zero frequency."""
        return self._terms.get(ZERO_FREQ, ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Expr):
            return self._terms == other._terms
        if isinstance(other, (Scalar, int, Fraction)):
            return self._terms == Expr.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .parser import print_expr
        return f"Expr('{print_expr(self)}')"

    def __str__(self) -> str:
        from .parser import print_expr
        return print_expr(self)

    # Arithmetic

    def _coerce(self, other: object) -> 'Expr':
        if isinstance(other, Expr):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return Expr.constant(other)
        raise TypeError(f"Cannot combine Expr with {type(other).__name__}")

    def __add__(self, other: object) -> 'Expr':
        other = self._coerce(other)
        result = dict(self._terms)
        for freq, coeff in other._terms.items():
            total = result.get(freq, ZERO) + coeff
            if total:
                result[freq] = total
            else:
                result.pop(freq, None)
        return Expr._trusted(result)

    __radd__ = __add__

    def __neg__(self) -> 'Expr':
        return Expr._trusted({freq: -coeff for freq, coeff in self._terms.items()})

    def __sub__(self, other: object) -> 'Expr':
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> 'Expr':
        return self._coerce(other) - self

    def scale(self, factor: ScalarLike) -> 'Expr':
        factor = Scalar.of(factor)
        if not factor:
            return Expr()
        return Expr._trusted({freq: coeff * factor for freq, coeff in self._terms.items()})

    def __mul__(self, other: object) -> 'Expr':
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Expr):
            return NotImplemented
        result: Dict[FreqVec, Scalar] = {}
        for f1, c1 in self._terms.items():
            for f2, c2 in other._terms.items():
                freq = f1.plus(f2)
                result[freq] = result.get(freq, ZERO) + c1 * c2
        return Expr._trusted({f: c for f, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'Expr':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Expr powers must be non-negative integers")
        result = Expr.constant(ONE)
        for _ in range(exponent):
            result = result * self
        return result

    # Calculus and specialisation

    def conj(self) -> 'Expr':
        """Complex conjugate: coefficients conjugated, frequencies negated."""
        return Expr._trusted({-freq: coeff.conj() for freq, coeff in self._terms.items()})

    def diff(self, var: str) -> 'Expr':
        """Exact partial derivative; the atom exp(i*m*var/2) gains the factor i*m/2."""
        index = _var_index(var)
        result: Dict[FreqVec, Scalar] = {}
        for freq, coeff in self._terms.items():
            m = freq[index]
            if m:
                result[freq] = coeff * Scalar(c=Fraction(m, 2))
        return Expr._trusted(result)

    def diff_n(self, var: str, order: int) -> 'Expr':
        result = self
        for _ in range(order):
            result = result.diff(var)
        return result

    def subst_zero(self, var: str) -> 'Expr':
        """Set ``var = 0``: that frequency component collapses and terms merge."""
        index = _var_index(var)
        result: Dict[FreqVec, Scalar] = {}
        for freq, coeff in self._terms.items():
            collapsed = FreqVec(*(0 if k == index else m for k, m in enumerate(freq)))
            result[collapsed] = result.get(collapsed, ZERO) + coeff
        return Expr._trusted({f: c for f, c in result.items() if c})

    def evaluate(self, theta=0.0, phi=0.0, theta_p=0.0, phi_p=0.0):
        """
        Evaluate in double precision.

        Angles may be floats or numpy arrays of a common shape; the result is a
        complex value (or array) ``sum c * exp(i*(m . angles)/2)``.
        """
        angles = (theta, phi, theta_p, phi_p)
        total = 0j
        for freq, coeff in self.items():
            phase = 0.0
            for m, angle in zip(freq, angles):
                if m:
                    phase = phase + m * np.asarray(angle, dtype=float)
            total = total + coeff.to_complex() * np.exp(0.5j * phase)
        return total

    def is_single_atom(self) -> bool:
        return len(self._terms) == 1


def const(value: ScalarLike) -> Expr:
    """Constant expression with the given coefficient."""
    return Expr.constant(value)


def exp_i(theta: int = 0, phi: int = 0, theta_p: int = 0, phi_p: int = 0,
          coeff: ScalarLike = ONE) -> Expr:
    """``coeff * exp(i*(theta*t + phi*p + ...)/2)`` with frequencies in half-angle units."""
    return Expr.atom(FreqVec(theta, phi, theta_p, phi_p), coeff)


def _unit(var: str, m: int) -> FreqVec:
    vec = [0, 0, 0, 0]
    vec[_var_index(var)] = m
    return FreqVec(*vec)


def cos_(var: str, m: int = 1) -> Expr:
    """cos(m*var/2)."""
    half = Scalar(Fraction(1, 2))
    return Expr({_unit(var, m): half, _unit(var, -m): half}) if m else Expr.constant(ONE)


def sin_(var: str, m: int = 1) -> Expr:
    """sin(m*var/2) = (exp(i x) - exp(-i x)) / (2i)."""
    if not m:
        return Expr()
    return Expr({_unit(var, m): Scalar(c=Fraction(-1, 2)), _unit(var, -m): Scalar(c=Fraction(1, 2))})


def expr_add(a: Expr, b: Expr) -> Expr:
    """Sum of two expressions."""
    return a + b


def expr_mul(a: Expr, b: Expr) -> Expr:
    """Product of two expressions, with atoms merged by frequency."""
    return a * b


def expr_conj(e: Expr) -> Expr:
    """Complex conjugate for real angles."""
    return e.conj()


def expr_diff(e: Expr, var: str) -> Expr:
    """Exact partial derivative in theta or phi."""
    if var not in DIFF_VARIABLES:
        raise ValueError(f"Operators differentiate only in {DIFF_VARIABLES}, got '{var}'")
    return e.diff(var)


def expr_subst_zero(e: Expr, var: str) -> Expr:
    """Set an initial-direction angle (theta_p or phi_p) to zero."""
    if var not in SUBST_VARIABLES:
        raise ValueError(f"Only {SUBST_VARIABLES} can be set to zero, got '{var}'")
    return e.subst_zero(var)


def expr_eval(e: Expr, angles: Iterable[float]) -> complex:
    """Double-precision value at (theta, phi, theta_p, phi_p); missing angles are zero."""
    values = list(angles)
    return complex(e.evaluate(*values))
