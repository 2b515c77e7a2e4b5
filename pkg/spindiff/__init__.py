"""
spindiff - Exact differential operators for spin 1/2 on quantization angles.

This package provides:
- Exact exponential sums over half-angle frequencies with Q(i, sqrt2) coefficients
- A text grammar and printer for angle expressions
- Spinor eigenvector families (Pauli, generalized, z, x, y)
- Matrix differential operators with composition and commutators
- An ansatz solver that re-derives operators from eigenpairs
- A finite-difference oracle and verification suites

Usage:
    >>> from spindiff import HALF, AnsatzSpec, Eigenpair, assemble, solve, get_operator, get_spinor
    >>>
    >>> sz = get_operator('Sz')
    >>> xi = get_spinor('z+')
    >>> sz.apply(xi) == xi.scale(HALF)
    True
    >>>
    >>> # Re-derive Sz from its eigenvectors
    >>> spec = AnsatzSpec((Eigenpair(xi, HALF), Eigenpair(get_spinor('z-'), -HALF)))
    >>> solve(assemble(spec)).status
    <SolveStatus.PARAMETRIC: 'parametric'>
"""

__version__ = '0.1.0'
__author__ = 'spindiff developers'
__license__ = 'MIT'

# Import main components
from .base import (
    SpinDiffError,
    ScalarDivisionError,
    ParseError,
    ExprSyntaxError,
    LatticeError,
    NonImaginaryExponentError,
    PhaseError,
    PreconditionError,
    AnsatzSchemaError,
    UnknownIdentifierError,
)

from .scalar import Scalar, ZERO, ONE, HALF, I, SQRT2, INV_SQRT2
from .expr import Expr, FreqVec, exp_i, cos_, sin_
from .parser import parse, print_expr
from .spinor import Spinor, SpinorMeta, inner, specialize, scale_phase, is_orthonormal_pair
from .diffop import DiffOp, MatrixOp, MultiIndex, apply, compose, commutator, eigen_factor

from .factory import (
    get_spinor_family,
    register_spinor_family,
    list_available_families,
    get_family_info,
    get_spinor,
    list_spinor_ids,
    get_operator,
    list_available_operators,
)

from .solver import (
    AnsatzSpec,
    Eigenpair,
    LinearSystem,
    SolveResult,
    SolveStatus,
    assemble,
    solve,
    reconstruct,
    search_phases,
    load_ansatz,
)

from .oracle import SamplePlan, CheckReport, fd_apply, crosscheck

__all__ = [
    # Version
    '__version__',

    # Exceptions
    'SpinDiffError',
    'ScalarDivisionError',
    'ParseError',
    'ExprSyntaxError',
    'LatticeError',
    'NonImaginaryExponentError',
    'PhaseError',
    'PreconditionError',
    'AnsatzSchemaError',
    'UnknownIdentifierError',

    # Exact values
    'Scalar',
    'ZERO',
    'ONE',
    'HALF',
    'I',
    'SQRT2',
    'INV_SQRT2',
    'Expr',
    'FreqVec',
    'exp_i',
    'cos_',
    'sin_',
    'parse',
    'print_expr',

    # Spinors and operators
    'Spinor',
    'SpinorMeta',
    'inner',
    'specialize',
    'scale_phase',
    'is_orthonormal_pair',
    'DiffOp',
    'MatrixOp',
    'MultiIndex',
    'apply',
    'compose',
    'commutator',
    'eigen_factor',

    # Factory functions
    'get_spinor_family',
    'register_spinor_family',
    'list_available_families',
    'get_family_info',
    'get_spinor',
    'list_spinor_ids',
    'get_operator',
    'list_available_operators',

    # Solver
    'AnsatzSpec',
    'Eigenpair',
    'LinearSystem',
    'SolveResult',
    'SolveStatus',
    'assemble',
    'solve',
    'reconstruct',
    'search_phases',
    'load_ansatz',

    # Oracle
    'SamplePlan',
    'CheckReport',
    'fd_apply',
    'crosscheck',
]
