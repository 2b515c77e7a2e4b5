"""
Eigenvectors for the z component with the initial direction on the z axis.
"""
from fractions import Fraction
from typing import Tuple

from ..base import PLUS_HALF
from ..expr import Expr, cos_, exp_i, sin_
from .base import BaseSpinorFamily


class ZFamily(BaseSpinorFamily):
    """
    z-axis family.

    Configuration:
        - symmetrized: True (default) multiplies by the global phase
          exp(-i*phi/2), giving (exp(-i phi/2) cos, -exp(i phi/2) sin) and
          (exp(-i phi/2) sin, exp(i phi/2) cos). False gives the plain
          specialization (cos, -exp(i phi) sin) and (sin, exp(i phi) cos).
    """

    axis = 'z'

    def _validate_config(self) -> None:
        self._reject_unknown_keys(('symmetrized',))
        if not isinstance(self.config.get('symmetrized', True), bool):
            raise ValueError("symmetrized must be a boolean")

    @property
    def symmetrized(self) -> bool:
        return self.config.get('symmetrized', True)

    def components(self, sign: Fraction) -> Tuple[Expr, Expr]:
        c, s = cos_('theta'), sin_('theta')
        if self.symmetrized:
            left, right = exp_i(phi=-1), exp_i(phi=1)
        else:
            left, right = Expr.constant(1), exp_i(phi=2)
        if sign == PLUS_HALF:
            return left * c, -(right * s)
        return left * s, right * c
