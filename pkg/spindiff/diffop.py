"""
Matrix-valued differential operators acting on spinors.

A :class:`DiffOp` is a finite sum ``sum_alpha c_alpha * d^alpha`` where
``alpha = (k_theta, k_phi)`` and the coefficients are Exprs. Products of
DiffOps expand by the Leibniz rule, so composition and commutators stay exact.
Operators only differentiate the final-direction angles theta and phi.
"""
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, Mapping, NamedTuple, Optional, Tuple, Union
import logging

from .expr import Expr, cos_, sin_
from .parser import print_expr
from .scalar import I, ONE, Scalar, ScalarLike
from .spinor import Spinor, SpinorMeta

logger = logging.getLogger(__name__)

SPIN_AXES = ('z', 'x', 'y')


class MultiIndex(NamedTuple):
    """Derivative orders in theta and phi."""
    k_theta: int = 0
    k_phi: int = 0

    @property
    def order(self) -> int:
        return self.k_theta + self.k_phi

    def plus(self, other: 'MultiIndex') -> 'MultiIndex':
        return MultiIndex(self.k_theta + other.k_theta, self.k_phi + other.k_phi)

    def minus(self, other: 'MultiIndex') -> 'MultiIndex':
        return MultiIndex(self.k_theta - other.k_theta, self.k_phi - other.k_phi)

    def below(self) -> Iterator['MultiIndex']:
        """All gamma with gamma <= self componentwise."""
        for a in range(self.k_theta + 1):
            for b in range(self.k_phi + 1):
                yield MultiIndex(a, b)

    def binomial(self, gamma: 'MultiIndex') -> int:
        return comb(self.k_theta, gamma.k_theta) * comb(self.k_phi, gamma.k_phi)

    def derivative_text(self) -> str:
        names = ['theta'] * self.k_theta + ['phi'] * self.k_phi
        return f"D({','.join(names)})"


D_THETA = MultiIndex(1, 0)
D_PHI = MultiIndex(0, 1)
IDENTITY_INDEX = MultiIndex(0, 0)


def differentiate(e: Expr, alpha: MultiIndex) -> Expr:
    """``d^alpha e`` (theta derivatives, then phi derivatives)."""
    return e.diff_n('theta', alpha.k_theta).diff_n('phi', alpha.k_phi)


def _display_key(alpha: MultiIndex) -> Tuple[int, int]:
    return (alpha.order, -alpha.k_theta)


class DiffOp:
    """
    Immutable scalar differential operator: map MultiIndex -> Expr coefficient.

    No zero coefficients are stored, so equality is map equality.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], Expr]] = None):
        clean: Dict[MultiIndex, Expr] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = MultiIndex(*alpha)
            if alpha.k_theta < 0 or alpha.k_phi < 0:
                raise ValueError(f"Derivative orders must be non-negative, got {tuple(alpha)}")
            if not isinstance(coeff, Expr):
                coeff = Expr.constant(coeff)
            total = clean.get(alpha, Expr()) + coeff
            if total.is_zero():
                clean.pop(alpha, None)
            else:
                clean[alpha] = total
        self._terms = clean

    @classmethod
    def multiply(cls, coeff: Union[Expr, ScalarLike]) -> 'DiffOp':
        """Zeroth-order operator: multiplication by ``coeff``."""
        return cls({IDENTITY_INDEX: coeff})

    @property
    def terms(self) -> Dict[MultiIndex, Expr]:
        return dict(self._terms)

    def coeff(self, alpha: Tuple[int, int]) -> Expr:
        return self._terms.get(MultiIndex(*alpha), Expr())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def order(self) -> int:
        return max((alpha.order for alpha in self._terms), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: 'DiffOp') -> 'DiffOp':
        merged: Dict[MultiIndex, Expr] = dict(self._terms)
        for alpha, coeff in other._terms.items():
            merged[alpha] = merged.get(alpha, Expr()) + coeff
        return DiffOp(merged)

    def __neg__(self) -> 'DiffOp':
        return DiffOp({alpha: -coeff for alpha, coeff in self._terms.items()})

    def __sub__(self, other: 'DiffOp') -> 'DiffOp':
        return self + (-other)

    def scale(self, factor: Union[Expr, ScalarLike]) -> 'DiffOp':
        """Left multiplication by a function or constant."""
        if not isinstance(factor, Expr):
            factor = Expr.constant(factor)
        return DiffOp({alpha: factor * coeff for alpha, coeff in self._terms.items()})

    def apply(self, e: Expr) -> Expr:
        result = Expr()
        for alpha, coeff in self._terms.items():
            result = result + coeff * differentiate(e, alpha)
        return result

    def __matmul__(self, other: 'DiffOp') -> 'DiffOp':
        """
        Composition ``self o other`` by the Leibniz rule:
        (f d^a) o (g d^b) = sum_{c <= a} C(a, c) f (d^c g) d^(a + b - c).
        """
        merged: Dict[MultiIndex, Expr] = {}
        for alpha, f in self._terms.items():
            for beta, g in other._terms.items():
                for gamma in alpha.below():
                    dg = differentiate(g, gamma)
                    if dg.is_zero():
                        continue
                    target = alpha.plus(beta).minus(gamma)
                    term = (f * dg).scale(alpha.binomial(gamma))
                    merged[target] = merged.get(target, Expr()) + term
        return DiffOp(merged)

    def to_text(self, style: str = 'trig') -> str:
        if not self._terms:
            return '0'
        parts = []
        for alpha in sorted(self._terms, key=_display_key):
            coeff = print_expr(self._terms[alpha], style)
            if alpha == IDENTITY_INDEX:
                parts.append(f"({coeff})")
            else:
                parts.append(f"({coeff})*{alpha.derivative_text()}")
        return ' + '.join(parts)

    def __repr__(self) -> str:
        return f"DiffOp('{self.to_text()}')"


_Row = Tuple[DiffOp, DiffOp]


@dataclass(frozen=True)
class MatrixOp:
    """2x2 matrix of DiffOps, acting on spinors."""
    entries: Tuple[_Row, _Row]

    @classmethod
    def diagonal(cls, a: DiffOp, d: DiffOp) -> 'MatrixOp':
        return cls(((a, DiffOp()), (DiffOp(), d)))

    @classmethod
    def zero(cls) -> 'MatrixOp':
        return cls.diagonal(DiffOp(), DiffOp())

    @classmethod
    def identity(cls) -> 'MatrixOp':
        one = DiffOp.multiply(ONE)
        return cls.diagonal(one, one)

    def __getitem__(self, index: Tuple[int, int]) -> DiffOp:
        i, j = index
        return self.entries[i][j]

    def _map(self, fn) -> 'MatrixOp':
        return MatrixOp(tuple(tuple(fn(entry) for entry in row) for row in self.entries))

    def _zip(self, other: 'MatrixOp', fn) -> 'MatrixOp':
        return MatrixOp(tuple(
            tuple(fn(self[i, j], other[i, j]) for j in range(2)) for i in range(2)
        ))

    def __add__(self, other: 'MatrixOp') -> 'MatrixOp':
        return self._zip(other, lambda p, q: p + q)

    def __sub__(self, other: 'MatrixOp') -> 'MatrixOp':
        return self._zip(other, lambda p, q: p - q)

    def __neg__(self) -> 'MatrixOp':
        return self._map(lambda p: -p)

    def scale(self, factor: Union[Expr, ScalarLike]) -> 'MatrixOp':
        return self._map(lambda p: p.scale(factor))

    def __matmul__(self, other: 'MatrixOp') -> 'MatrixOp':
        return MatrixOp(tuple(
            tuple(self[i, 0] @ other[0, j] + self[i, 1] @ other[1, j] for j in range(2))
            for i in range(2)
        ))

    def apply(self, s: Spinor) -> Spinor:
        top = self[0, 0].apply(s.top) + self[0, 1].apply(s.bottom)
        bottom = self[1, 0].apply(s.top) + self[1, 1].apply(s.bottom)
        label = f"op({s.meta.label})" if s.meta.label else 'op'
        return Spinor(top, bottom, SpinorMeta('derived', None, False, label))

    def is_zero(self) -> bool:
        return all(entry.is_zero() for row in self.entries for entry in row)

    def is_diagonal(self) -> bool:
        return self[0, 1].is_zero() and self[1, 0].is_zero()

    @property
    def order(self) -> int:
        return max(entry.order for row in self.entries for entry in row)

    def to_text(self, style: str = 'trig') -> str:
        names = (('A', 'B'), ('C', 'D'))
        lines = []
        for i in range(2):
            for j in range(2):
                lines.append(f"{names[i][j]} = {self[i, j].to_text(style)}")
        return '\n'.join(lines)


def apply(op: MatrixOp, s: Spinor) -> Spinor:
    return op.apply(s)


def compose(p: MatrixOp, q: MatrixOp) -> MatrixOp:
    return p @ q


def commutator(p: MatrixOp, q: MatrixOp) -> MatrixOp:
    """``[p, q] = p q - q p``."""
    return (p @ q) - (q @ p)


def op_linear(p: MatrixOp, q: Optional[MatrixOp], c: ScalarLike, op: str) -> MatrixOp:
    """
    Entrywise linear combination.

    Args:
        p: First operator.
        q: Second operator (ignored for 'scale').
        c: Scale factor (used by 'scale').
        op: One of 'add', 'sub', 'scale'.
    """
    if op == 'add':
        return p + q
    if op == 'sub':
        return p - q
    if op == 'scale':
        return p.scale(Scalar.of(c))
    raise ValueError(f"Unknown operator combination: '{op}'")


def eigen_factor(op: MatrixOp, s: Spinor) -> Optional[Scalar]:
    """
    The Scalar lambda with ``op s == lambda s``, or None if s is not an eigenvector.
    """
    if s.is_zero():
        return None
    result = op.apply(s)
    reference = s.top if not s.top.is_zero() else s.bottom
    image = result.top if not s.top.is_zero() else result.bottom
    freq, coeff = next(reference.items())
    factor = image.coeff(freq) / coeff
    return factor if result == s.scale(factor) else None


def build_spin_op(axis: str) -> MatrixOp:
    """
    Spin component operators in units of hbar.

    - z: diag(-sin t d_t + i cos t d_p,  sin t d_t + i cos t d_p)
    - x: diag( cos t d_t + i sin t d_p, -cos t d_t + i sin t d_p)
    - y: diag(-i d_t, -i d_t)
    """
    sin_t, cos_t = sin_('theta', 2), cos_('theta', 2)
    i_cos, i_sin = cos_t.scale(I), sin_t.scale(I)
    if axis == 'z':
        return MatrixOp.diagonal(
            DiffOp({D_THETA: -sin_t, D_PHI: i_cos}),
            DiffOp({D_THETA: sin_t, D_PHI: i_cos}),
        )
    if axis == 'x':
        return MatrixOp.diagonal(
            DiffOp({D_THETA: cos_t, D_PHI: i_sin}),
            DiffOp({D_THETA: -cos_t, D_PHI: i_sin}),
        )
    if axis == 'y':
        minus_i = DiffOp({D_THETA: Expr.constant(-I)})
        return MatrixOp.diagonal(minus_i, minus_i)
    raise ValueError(f"Unknown spin axis: '{axis}'. Available: {', '.join(SPIN_AXES)}")


def build_s2_closed() -> MatrixOp:
    """Closed form of the squared spin: diag(i d_p - d_pp, -i d_p - d_pp)."""
    minus_one = Expr.constant(-1)
    return MatrixOp.diagonal(
        DiffOp({D_PHI: Expr.constant(I), (0, 2): minus_one}),
        DiffOp({D_PHI: Expr.constant(-I), (0, 2): minus_one}),
    )


def build_s2_composed() -> MatrixOp:
    """Sum of squares of the three components, expanded by Leibniz composition."""
    total = MatrixOp.zero()
    for axis in SPIN_AXES:
        op = build_spin_op(axis)
        total = total + op @ op
    logger.debug(f"Composed S^2 has order {total.order}")
    return total
