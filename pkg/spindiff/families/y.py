"""
Eigenvectors for the y component, with three phase conventions.

- 'none':      (1/sqrt2)(exp(-i phi/2), +/- i exp(i phi/2)), no theta dependence.
- 'printed':   both vectors multiplied by exp(-i theta/2).
- 'corrected': the +1/2 vector multiplied by exp(+i theta/2) and the -1/2
               vector by exp(-i theta/2), which makes -i d/dtheta return
               +1/2 and -1/2 respectively.
"""
from fractions import Fraction
from typing import Tuple

from ..base import PLUS_HALF
from ..expr import Expr, exp_i
from ..scalar import I, INV_SQRT2
from .base import BaseSpinorFamily

PHASE_CONVENTIONS = ('none', 'printed', 'corrected')

_AXIS_TAGS = {'none': 'y', 'printed': 'y_printed', 'corrected': 'y_corrected'}
_PREFIXES = {'none': 'y', 'printed': 'yprinted', 'corrected': 'ycorr'}


class YFamily(BaseSpinorFamily):
    """
    y-axis family.

    Configuration:
        - phase: one of 'none', 'printed', 'corrected' (default 'corrected').
    """

    axis = 'y'

    def _validate_config(self) -> None:
        self._reject_unknown_keys(('phase',))
        phase = self.config.get('phase', 'corrected')
        if phase not in PHASE_CONVENTIONS:
            raise ValueError(
                f"phase must be one of {', '.join(PHASE_CONVENTIONS)}, got '{phase}'"
            )

    @property
    def phase(self) -> str:
        return self.config.get('phase', 'corrected')

    @property
    def axis_tag(self) -> str:
        return _AXIS_TAGS[self.phase]

    @property
    def prefix(self) -> str:
        return _PREFIXES[self.phase]

    def theta_frequency(self, sign: Fraction) -> int:
        """Half-angle frequency of the theta phase applied to the given vector."""
        if self.phase == 'none':
            return 0
        if self.phase == 'corrected' and sign == PLUS_HALF:
            return 1
        return -1

    def components(self, sign: Fraction) -> Tuple[Expr, Expr]:
        m = self.theta_frequency(sign)
        top = exp_i(theta=m, phi=-1, coeff=INV_SQRT2)
        bottom = exp_i(theta=m, phi=1, coeff=INV_SQRT2 * I)
        if sign == PLUS_HALF:
            return top, bottom
        return top, -bottom
