"""
Base eigenvector family interface.

Every concrete family (Pauli, generalized, z, x, y) implements this interface
so that the factory, the solver and the verification suites can treat them
uniformly.
"""
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from ..base import PLUS_HALF, SignLike, coerce_sign
from ..expr import Expr
from ..spinor import Spinor, SpinorMeta


class BaseSpinorFamily(ABC):
    """
    Abstract base class for spin-1/2 eigenvector families.

    A family produces the two spinors with projection +1/2 and -1/2 along its
    initial quantization direction.
    """

    #: Tag stored in SpinorMeta.initial_axis.
    axis: str = ''

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the family.

        Args:
            config: Family-specific options (symmetrization, phase convention).
        """
        self.config = dict(config or {})
        self._validate_config()

    @abstractmethod
    def _validate_config(self) -> None:
        """
        Validate family configuration.

        Raises:
            ValueError: If an option is unknown or has an invalid value.
        """
        pass

    @abstractmethod
    def components(self, sign: SignLike) -> Tuple[Expr, Expr]:
        """
        Exact top and bottom amplitudes for a projection.

        Args:
            sign: +1/2 or -1/2.

        Returns:
            Pair (top, bottom) of Exprs.
        """
        pass

    @property
    def symmetrized(self) -> bool:
        """Whether the family carries the global phase that makes the eigenrelation hold."""
        return True

    @property
    def axis_tag(self) -> str:
        return self.axis

    @property
    def prefix(self) -> str:
        return self.axis

    def label(self, sign: Fraction) -> str:
        """CLI identifier of the eigenvector, e.g. 'z+' or 'z-unsym'."""
        label = f"{self.prefix}{'+' if sign == PLUS_HALF else '-'}"
        return label if self.symmetrized else f"{label}unsym"

    def build(self, sign: SignLike) -> Spinor:
        """Build the eigenvector with the given projection."""
        sign = coerce_sign(sign)
        top, bottom = self.components(sign)
        meta = SpinorMeta(self.axis_tag, sign, self.symmetrized, self.label(sign))
        return Spinor(top, bottom, meta)

    def pair(self) -> Tuple[Spinor, Spinor]:
        """The (+1/2, -1/2) eigenvectors."""
        return self.build('+'), self.build('-')

    def _reject_unknown_keys(self, allowed: Tuple[str, ...]) -> None:
        unknown = sorted(set(self.config) - set(allowed))
        if unknown:
            name = self.__class__.__name__
            raise ValueError(f"{name} does not accept config keys: {', '.join(unknown)}")

    def __repr__(self) -> str:
        family = self.__class__.__name__
        return f"<{family} config={self.config}>"
