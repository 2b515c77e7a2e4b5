"""
Eigenvectors for the x component.
"""
from fractions import Fraction
from typing import Tuple

from ..base import PLUS_HALF
from ..expr import Expr, cos_, exp_i, sin_
from ..scalar import INV_SQRT2
from .base import BaseSpinorFamily


class XFamily(BaseSpinorFamily):
    """
    (1/sqrt2) ((sin + cos) exp(-i phi/2), (cos - sin) exp(i phi/2)) and
    (1/sqrt2) ((sin - cos) exp(-i phi/2), (cos + sin) exp(i phi/2)),
    with half angles theta/2.
    """

    axis = 'x'

    def _validate_config(self) -> None:
        self._reject_unknown_keys(())

    def components(self, sign: Fraction) -> Tuple[Expr, Expr]:
        c, s = cos_('theta'), sin_('theta')
        left, right = exp_i(phi=-1, coeff=INV_SQRT2), exp_i(phi=1, coeff=INV_SQRT2)
        if sign == PLUS_HALF:
            return (s + c) * left, (c - s) * right
        return (s - c) * left, (c + s) * right
