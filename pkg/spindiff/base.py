"""
Base exceptions and shared constants for the spindiff package.

Every error raised by the library derives from :class:`SpinDiffError` so callers
(and the command-line front end) can catch the whole family at once.
"""
from fractions import Fraction
from typing import Union


class SpinDiffError(Exception):
    """Base exception for spindiff operations."""
    pass


class ScalarDivisionError(SpinDiffError, ZeroDivisionError):
    """Raised when dividing by the zero Scalar."""
    pass


class ParseError(SpinDiffError):
    """
    Raised when an angle expression cannot be turned into an Expr.

    Attributes:
        position: 0-based character offset into the parsed text.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self) -> str:
        return f"{self.message} (at position {self.position})"


class ExprSyntaxError(ParseError):
    """Raised when the text does not conform to the expression grammar."""
    pass


class LatticeError(ParseError):
    """Raised when an angle argument leaves the half-integer frequency lattice."""
    pass


class NonImaginaryExponentError(ParseError):
    """Raised when exp() is given an argument that is not i times an angle form."""
    pass


class PhaseError(SpinDiffError):
    """Raised when a phase factor is not a single unit-modulus atom."""
    pass


class PreconditionError(SpinDiffError):
    """Raised when an operation is called on inputs outside its domain."""
    pass


class AnsatzSchemaError(SpinDiffError):
    """Raised when an ansatz document does not match the ansatz schema."""
    pass


class UnknownIdentifierError(SpinDiffError):
    """Raised when a family, spinor or operator identifier is not registered."""
    pass


# Spin projection quantum numbers, in units of hbar.
PLUS_HALF = Fraction(1, 2)
MINUS_HALF = Fraction(-1, 2)

SignLike = Union[Fraction, int, float, str]


def coerce_sign(sign: SignLike) -> Fraction:
    """
    Normalize a spin projection to ``Fraction(1, 2)`` or ``Fraction(-1, 2)``.

    Accepts the fractions themselves, ``+1``/``-1``, ``0.5``/``-0.5`` and the
    strings ``'+'``, ``'-'``, ``'+1/2'``, ``'-1/2'``, ``'1/2'``.

    Raises:
        ValueError: If the value is not a spin-1/2 projection.
    """
    if isinstance(sign, str):
        text = sign.strip()
        if text in ('+', '-'):
            return PLUS_HALF if text == '+' else MINUS_HALF
        try:
            value = Fraction(text)
        except ValueError:
            raise ValueError(f"Invalid spin projection: '{sign}'")
    elif isinstance(sign, (int, Fraction)):
        value = Fraction(sign)
        if abs(value) == 1:
            value = value / 2
    elif isinstance(sign, float):
        value = Fraction(sign).limit_denominator(2)
    else:
        raise ValueError(f"Invalid spin projection: {sign!r}")

    if value not in (PLUS_HALF, MINUS_HALF):
        raise ValueError(f"Spin projection must be +1/2 or -1/2, got {value}")
    return value
