"""
Two-component probability-amplitude spinors.

Components are :class:`Expr` values of the final-direction angles (theta, phi)
and, for the generalized family, the initial-direction angles (theta_p, phi_p).
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Tuple
import logging

from .base import PLUS_HALF, PhaseError, PreconditionError
from .expr import Expr
from .parser import print_expr
from .scalar import Scalar, ScalarLike

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class SpinorMeta:
    """
    Quantum-number metadata.

    Attributes:
        initial_axis: Family tag (initial quantization direction).
        sign: Spin projection m = +1/2 or -1/2 along the initial direction.
        symmetrized: Whether the global phase makes the differential
            eigenrelation hold.
        label: Short identifier, e.g. 'z+' or 'ycorr-'.
    """
    initial_axis: str = 'derived'
    sign: Optional[Fraction] = PLUS_HALF
    symmetrized: bool = False
    label: str = ''


@dataclass(frozen=True)
class Spinor:
    """
    Column of two Exprs. Equality compares components only.
    """
    top: Expr
    bottom: Expr
    meta: SpinorMeta = field(default_factory=SpinorMeta, compare=False)

    @property
    def components(self) -> Tuple[Expr, Expr]:
        return (self.top, self.bottom)

    def is_zero(self) -> bool:
        return self.top.is_zero() and self.bottom.is_zero()

    def scale(self, factor: ScalarLike) -> 'Spinor':
        return Spinor(self.top.scale(factor), self.bottom.scale(factor), self._derived('scaled'))

    def __add__(self, other: 'Spinor') -> 'Spinor':
        return Spinor(self.top + other.top, self.bottom + other.bottom, self._derived('sum'))

    def __sub__(self, other: 'Spinor') -> 'Spinor':
        return Spinor(self.top - other.top, self.bottom - other.bottom, self._derived('difference'))

    def _derived(self, how: str) -> SpinorMeta:
        return SpinorMeta('derived', None, False, f"{how}({self.meta.label})" if self.meta.label else how)

    def evaluate(self, theta=0.0, phi=0.0, theta_p=0.0, phi_p=0.0):
        """Numeric values of both components."""
        return (self.top.evaluate(theta, phi, theta_p, phi_p),
                self.bottom.evaluate(theta, phi, theta_p, phi_p))

    def norm2(self) -> Expr:
        return inner(self, self)

    def to_text(self, style: str = 'exponential') -> Tuple[str, str]:
        return print_expr(self.top, style), print_expr(self.bottom, style)


def inner(a: Spinor, b: Spinor) -> Expr:
    """``conj(a.top)*b.top + conj(a.bottom)*b.bottom``."""
    return a.top.conj() * b.top + a.bottom.conj() * b.bottom


def specialize(s: Spinor) -> Spinor:
    """
    Set the initial direction to the z axis: theta_p = phi_p = 0.

    Raises:
        PreconditionError: If the spinor is not from the generalized family.
    """
    if s.meta.initial_axis != 'generalized':
        raise PreconditionError(
            f"specialize requires a generalized spinor, got initial_axis='{s.meta.initial_axis}'"
        )
    top = s.top.subst_zero('theta_p').subst_zero('phi_p')
    bottom = s.bottom.subst_zero('theta_p').subst_zero('phi_p')
    suffix = '+' if s.meta.sign == PLUS_HALF else '-'
    meta = SpinorMeta('z', s.meta.sign, False, f"z{suffix}unsym")
    logger.debug(f"Specialized {s.meta.label or 'spinor'} to the z axis")
    return Spinor(top, bottom, meta)


def scale_phase(s: Spinor, phase: Expr) -> Spinor:
    """
    Multiply both components by a unit-modulus single-atom phase.

    Raises:
        PhaseError: If the phase is not one term with a coefficient of modulus 1.
    """
    if not phase.is_single_atom():
        raise PhaseError(f"Phase must be a single exponential atom, got {len(phase)} terms")
    (_, coeff), = phase.items()
    if not coeff.is_unimodular():
        raise PhaseError(f"Phase coefficient {coeff!r} does not have modulus 1")
    return Spinor(s.top * phase, s.bottom * phase, replace(s.meta, label=f"{s.meta.label}*phase"))


def is_orthonormal_pair(plus: Spinor, minus: Spinor) -> bool:
    """Columns [plus | minus] form a unitary matrix."""
    one = Expr.constant(Scalar.of(1))
    return (inner(plus, plus) == one and inner(minus, minus) == one
            and inner(plus, minus).is_zero())
