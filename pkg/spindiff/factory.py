"""
Factory for eigenvector families, named spinors and named operators.
"""
from typing import Any, Callable, Dict, Optional, Tuple
import logging

from .base import UnknownIdentifierError, coerce_sign
from .diffop import MatrixOp, build_s2_closed, build_s2_composed, build_spin_op
from .families.base import BaseSpinorFamily
from .families.generalized import GeneralizedFamily
from .families.pauli import PauliFamily
from .families.x import XFamily
from .families.y import YFamily
from .families.z import ZFamily
from .spinor import Spinor

logger = logging.getLogger(__name__)


# Registry of available families
FAMILY_REGISTRY = {
    'pauli': PauliFamily,
    'generalized': GeneralizedFamily,
    'z': ZFamily,
    'x': XFamily,
    'y': YFamily,
}

# Spinor identifier -> (family, family config)
SPINOR_PREFIXES: Dict[str, Tuple[str, Dict[str, Any]]] = {
    'pauli': ('pauli', {}),
    'gen': ('generalized', {}),
    'z': ('z', {'symmetrized': True}),
    'x': ('x', {}),
    'y': ('y', {'phase': 'none'}),
    'yprinted': ('y', {'phase': 'printed'}),
    'ycorr': ('y', {'phase': 'corrected'}),
}

OPERATOR_REGISTRY: Dict[str, Callable[[], MatrixOp]] = {
    'Sz': lambda: build_spin_op('z'),
    'Sx': lambda: build_spin_op('x'),
    'Sy': lambda: build_spin_op('y'),
    'S2closed': build_s2_closed,
    'S2composed': build_s2_composed,
}


def get_spinor_family(name: str, config: Optional[Dict[str, Any]] = None) -> BaseSpinorFamily:
    """
    Create an eigenvector family.

    Args:
        name: Family identifier ('pauli', 'generalized', 'z', 'x', 'y')
        config: Family-specific configuration dictionary

    Returns:
        Initialized family instance

    Raises:
        UnknownIdentifierError: If the family is unknown or its config is invalid

    Example:
        >>> family = get_spinor_family('y', {'phase': 'corrected'})
        >>> family.build('+').meta.label
        'ycorr+'
    """
    name = name.lower().strip()

    if name not in FAMILY_REGISTRY:
        available = ', '.join(FAMILY_REGISTRY.keys())
        raise UnknownIdentifierError(
            f"Unknown spinor family: '{name}'. "
            f"Available families: {available}"
        )

    family_class = FAMILY_REGISTRY[name]

    try:
        logger.debug(f"Creating {name} spinor family")
        return family_class(config=config)

    except Exception as e:
        logger.error(f"Failed to create {name} family: {e}")
        raise UnknownIdentifierError(
            f"Failed to initialize {name} family: {e}"
        ) from e


def register_spinor_family(name: str, family_class: type) -> None:
    """
    Register a custom eigenvector family.

    Raises:
        ValueError: If family_class doesn't inherit from BaseSpinorFamily
    """
    if not isinstance(family_class, type) or not issubclass(family_class, BaseSpinorFamily):
        raise ValueError(
            f"Family class must inherit from BaseSpinorFamily, "
            f"got {getattr(family_class, '__name__', family_class)!r}"
        )

    name = name.lower().strip()
    FAMILY_REGISTRY[name] = family_class
    logger.info(f"Registered custom spinor family: {name}")


def list_available_families() -> list[str]:
    return list(FAMILY_REGISTRY.keys())


def get_family_info(name: str) -> Dict[str, Any]:
    """
    Get information about a family.

    Raises:
        UnknownIdentifierError: If the family is unknown
    """
    name = name.lower().strip()

    if name not in FAMILY_REGISTRY:
        raise UnknownIdentifierError(f"Unknown spinor family: '{name}'")

    family_class = FAMILY_REGISTRY[name]

    return {
        'family': name,
        'class_name': family_class.__name__,
        'module': family_class.__module__,
        'docstring': family_class.__doc__,
    }


def list_spinor_ids() -> list[str]:
    """
    Every named spinor accepted by :func:`get_spinor`.

    Example:
        >>> list_spinor_ids()[:4]
        ['pauli+', 'pauli-', 'gen+', 'gen-']
    """
    ids = []
    for prefix in SPINOR_PREFIXES:
        ids.extend([f"{prefix}+", f"{prefix}-"])
    ids.extend(['z+unsym', 'z-unsym'])
    return ids


def get_spinor(identifier: str) -> Spinor:
    """
    Build a named spinor such as 'z+', 'x-', 'ycorr+' or 'z-unsym'.

    Raises:
        UnknownIdentifierError: If the identifier names no spinor
    """
    key = identifier.strip().lower()
    symmetrized = True
    if key.endswith('unsym'):
        key, symmetrized = key[:-len('unsym')], False

    prefix, sign = key[:-1], key[-1:]
    if sign not in ('+', '-') or prefix not in SPINOR_PREFIXES or (not symmetrized and prefix != 'z'):
        raise UnknownIdentifierError(
            f"Unknown spinor: '{identifier}'. "
            f"Available spinors: {', '.join(list_spinor_ids())}"
        )

    family, config = SPINOR_PREFIXES[prefix]
    if family == 'z':
        config = {'symmetrized': symmetrized}
    return get_spinor_family(family, config).build(coerce_sign(sign))


def list_available_operators() -> list[str]:
    return list(OPERATOR_REGISTRY.keys())


def get_operator(name: str) -> MatrixOp:
    """
    Build a named operator ('Sz', 'Sx', 'Sy', 'S2closed', 'S2composed').

    Lookup is case-insensitive.

    Raises:
        UnknownIdentifierError: If the name is unknown
    """
    canonical = {key.lower(): key for key in OPERATOR_REGISTRY}
    key = canonical.get(name.strip().lower())
    if key is None:
        raise UnknownIdentifierError(
            f"Unknown operator: '{name}'. "
            f"Available operators: {', '.join(OPERATOR_REGISTRY)}"
        )
    logger.debug(f"Building operator {key}")
    return OPERATOR_REGISTRY[key]()
