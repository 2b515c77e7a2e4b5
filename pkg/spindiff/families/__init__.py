"""Eigenvector family implementations."""

from .base import BaseSpinorFamily
from .pauli import PauliFamily
from .generalized import GeneralizedFamily
from .z import ZFamily
from .x import XFamily
from .y import YFamily

__all__ = [
    'BaseSpinorFamily',
    'PauliFamily',
    'GeneralizedFamily',
    'ZFamily',
    'XFamily',
    'YFamily',
]
