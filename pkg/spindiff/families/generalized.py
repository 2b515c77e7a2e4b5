"""
Generalized two-direction eigenvectors.

Elements are amplitudes for a projection measured first along a (polar angles
theta_p, phi_p) and then along b (polar angles theta, phi).
"""
from fractions import Fraction
from typing import Tuple

from ..base import PLUS_HALF
from ..expr import Expr, cos_, exp_i, sin_
from .base import BaseSpinorFamily


class GeneralizedFamily(BaseSpinorFamily):
    """
    Amplitudes over all four angles; setting theta_p = phi_p = 0 gives the
    unsymmetrized z family.

    Configuration: none.
    """

    axis = 'generalized'

    def _validate_config(self) -> None:
        self._reject_unknown_keys(())

    @property
    def symmetrized(self) -> bool:
        return False

    def label(self, sign: Fraction) -> str:
        return f"gen{'+' if sign == PLUS_HALF else '-'}"

    def components(self, sign: Fraction) -> Tuple[Expr, Expr]:
        c, s = cos_('theta'), sin_('theta')
        cp, sp = cos_('theta_p'), sin_('theta_p')
        relative = exp_i(phi=2, phi_p=-2)  # exp(i(phi - phi_p))
        if sign == PLUS_HALF:
            return c * cp + relative * s * sp, c * sp - relative * s * cp
        return s * cp - relative * c * sp, s * sp + relative * c * cp
