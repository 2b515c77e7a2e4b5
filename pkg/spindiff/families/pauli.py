"""
Pauli spin vectors: constant columns (1, 0) and (0, 1).
"""
from fractions import Fraction
from typing import Tuple

from ..base import PLUS_HALF
from ..expr import Expr, const
from .base import BaseSpinorFamily


class PauliFamily(BaseSpinorFamily):
    """
    Constant eigenvectors of the z component with initial and final axis z.

    Configuration: none.
    """

    axis = 'pauli'

    def _validate_config(self) -> None:
        self._reject_unknown_keys(())

    def components(self, sign: Fraction) -> Tuple[Expr, Expr]:
        if sign == PLUS_HALF:
            return const(1), Expr()
        return Expr(), const(1)
