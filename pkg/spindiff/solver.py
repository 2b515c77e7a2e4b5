"""
Operator ansatz solving.

Given eigenvector/eigenvalue pairs and an ansatz (active matrix entries,
derivative orders, coefficient basis), the eigenvalue condition
``[S] xi = lambda xi`` becomes a linear system in the unknown coefficients:
each exponential atom of ``(ansatz applied to xi) - lambda xi`` must vanish.
The system is solved exactly over Q(i, sqrt2).
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union
import json
import logging

import jsonschema

from .base import AnsatzSchemaError, PreconditionError, UnknownIdentifierError
from .diffop import DiffOp, MatrixOp, MultiIndex, differentiate
from .expr import Expr, FreqVec, exp_i
from .parser import parse, print_expr
from .scalar import HALF, ONE, ZERO, Scalar
from .spinor import Spinor, SpinorMeta, scale_phase

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / 'data'
ANSATZ_SCHEMA_PATH = DATA_DIR / 'ansatz.schema.json'

ENTRY_POSITIONS = {'A': (0, 0), 'B': (0, 1), 'C': (1, 0), 'D': (1, 1)}
# Diagonal entries first, so free columns fall on the off-diagonal entries
ENTRY_ORDER = ('A', 'D', 'B', 'C')
DEFAULT_ORDERS = (MultiIndex(1, 0), MultiIndex(0, 1))
DEFAULT_BASIS = tuple(FreqVec(m, n) for m in (-2, 0, 2) for n in (-2, 0, 2))


class SolveStatus(Enum):
    UNIQUE = 'unique'
    PARAMETRIC = 'parametric'
    INFEASIBLE = 'infeasible'


@dataclass(frozen=True)
class Eigenpair:
    spinor: Spinor
    eigenvalue: Scalar


class Unknown(NamedTuple):
    """Coefficient of ``atom * d^order`` in matrix entry ``entry``."""
    entry: str
    order: MultiIndex
    atom: FreqVec

    def describe(self) -> str:
        return f"{self.entry}[{self.order.derivative_text()}]<{print_expr(Expr.atom(self.atom))}>"


class RowProvenance(NamedTuple):
    """Where an equation came from: eigenpair index, spinor component, atom."""
    eigenpair: int
    component: int
    freq: FreqVec


@dataclass(frozen=True)
class Row:
    coeffs: Tuple[Scalar, ...]
    rhs: Scalar
    provenance: RowProvenance


@dataclass(frozen=True)
class AnsatzSpec:
    """
    Ansatz for a 2x2 first-order (by default) operator.

    Attributes:
        eigenpairs: (spinor, eigenvalue) constraints, at least one.
        pattern: Active matrix entries among 'A', 'B', 'C', 'D'.
        derivative_orders: Multi-indices (k_theta, k_phi) allowed in each entry.
        basis: Frequency atoms spanning each coefficient function.
        name: Optional label used in logs and reports.
    """
    eigenpairs: Tuple[Eigenpair, ...]
    pattern: FrozenSet[str] = frozenset('ABCD')
    derivative_orders: Tuple[MultiIndex, ...] = DEFAULT_ORDERS
    basis: Tuple[FreqVec, ...] = DEFAULT_BASIS
    name: str = ''

    def __post_init__(self) -> None:
        object.__setattr__(self, 'eigenpairs', tuple(self.eigenpairs))
        object.__setattr__(self, 'pattern', frozenset(self.pattern))
        object.__setattr__(self, 'derivative_orders',
                           tuple(MultiIndex(*alpha) for alpha in self.derivative_orders))
        object.__setattr__(self, 'basis', tuple(FreqVec.of(atom) for atom in self.basis))

        if not self.eigenpairs:
            raise ValueError("An ansatz needs at least one eigenpair")
        unknown = sorted(self.pattern - set(ENTRY_POSITIONS))
        if unknown:
            raise ValueError(f"Unknown matrix entries in pattern: {', '.join(unknown)}")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("Basis atoms must be distinct")
        if len(set(self.derivative_orders)) != len(self.derivative_orders):
            raise ValueError("Derivative orders must be distinct")
        for alpha in self.derivative_orders:
            if alpha.k_theta < 0 or alpha.k_phi < 0:
                raise ValueError(f"Derivative orders must be non-negative, got {tuple(alpha)}")

    def unknowns(self) -> Tuple[Unknown, ...]:
        """Unknowns in declaration order: entry (A, D, B, C), then derivative order, then atom."""
        return tuple(
            Unknown(entry, alpha, atom)
            for entry in ENTRY_ORDER if entry in self.pattern
            for alpha in self.derivative_orders
            for atom in self.basis
        )


@dataclass(frozen=True)
class LinearSystem:
    unknowns: Tuple[Unknown, ...]
    rows: Tuple[Row, ...]

    def __post_init__(self) -> None:
        width = len(self.unknowns)
        for row in self.rows:
            if len(row.coeffs) != width:
                raise ValueError("Every row must have one coefficient per unknown")


@dataclass(frozen=True)
class Witness:
    """
    Contradictory equation: ``sum_k weight_k * row_k`` has all-zero
    coefficients and right-hand side ``rhs != 0``.
    """
    combination: Tuple[Tuple[int, Scalar], ...]
    rhs: Scalar
    provenance: Tuple[RowProvenance, ...]


@dataclass(frozen=True)
class SolveResult:
    """
    Outcome of exact elimination.

    For 'parametric' results, ``solution`` is the particular solution with all
    free unknowns set to zero and ``nullspace`` spans the homogeneous solutions.
    """
    status: SolveStatus
    unknowns: Tuple[Unknown, ...]
    solution: Dict[Unknown, Scalar] = field(default_factory=dict)
    nullspace: Tuple[Dict[Unknown, Scalar], ...] = ()
    witness: Optional[Witness] = None
    rank: int = 0

    @property
    def free_count(self) -> int:
        return len(self.nullspace)


def assemble(spec: AnsatzSpec) -> LinearSystem:
    """
    Build the linear system for the ansatz unknowns.

    Raises:
        PreconditionError: If an eigenpair spinor is zero.
    """
    unknowns = spec.unknowns()
    width = len(unknowns)
    rows: List[Row] = []
    atoms = {atom: Expr.atom(atom) for atom in spec.basis}

    for p, pair in enumerate(spec.eigenpairs):
        if pair.spinor.is_zero():
            raise PreconditionError(f"Eigenpair {p} has a zero spinor and imposes no constraint")
        components = pair.spinor.components
        derivatives: Dict[Tuple[int, MultiIndex], Expr] = {}

        for i in (0, 1):
            contributions: List[Tuple[int, Expr]] = []
            for k, unknown in enumerate(unknowns):
                row_index, j = ENTRY_POSITIONS[unknown.entry]
                if row_index != i:
                    continue
                key = (j, unknown.order)
                if key not in derivatives:
                    derivatives[key] = differentiate(components[j], unknown.order)
                contribution = atoms[unknown.atom] * derivatives[key]
                if contribution:
                    contributions.append((k, contribution))

            target = components[i].scale(pair.eigenvalue)
            freqs = set(target.frequencies())
            for _, contribution in contributions:
                freqs.update(contribution.frequencies())

            for freq in sorted(freqs):
                coeffs = [ZERO] * width
                for k, contribution in contributions:
                    coeffs[k] = contribution.coeff(freq)
                rows.append(Row(tuple(coeffs), target.coeff(freq), RowProvenance(p, i, freq)))

    logger.info(f"Assembled ansatz '{spec.name or 'unnamed'}': {width} unknowns, {len(rows)} rows")
    return LinearSystem(unknowns, tuple(rows))


def _axpy(target: Dict[int, Scalar], factor: Scalar, source: Mapping[int, Scalar]) -> Dict[int, Scalar]:
    """target - factor * source, dropping zeros."""
    result = dict(target)
    for key, value in source.items():
        total = result.get(key, ZERO) - factor * value
        if total:
            result[key] = total
        else:
            result.pop(key, None)
    return result


def solve(ls: LinearSystem) -> SolveResult:
    """
    Reduce the system to row echelon form by exact elimination.

    Columns are processed in unknown declaration order; each pivot is the first
    remaining row with a nonzero entry in that column. Every working row keeps
    the combination of original rows it equals, so a contradiction can be
    traced back to the equations that produced it.
    """
    n = len(ls.unknowns)
    # (sparse coefficients, rhs, combination of original rows)
    work = [
        ({k: c for k, c in enumerate(row.coeffs) if c}, row.rhs, {index: ONE})
        for index, row in enumerate(ls.rows)
    ]

    pivots: List[int] = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(work)) if col in work[r][0]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        coeffs, rhs, combo = work[rank]
        inv = coeffs[col].inverse()
        coeffs = {k: v * inv for k, v in coeffs.items()}
        combo = {k: v * inv for k, v in combo.items()}
        work[rank] = (coeffs, rhs * inv, combo)

        for r in range(len(work)):
            if r == rank:
                continue
            other_coeffs, other_rhs, other_combo = work[r]
            factor = other_coeffs.get(col)
            if factor is None:
                continue
            work[r] = (
                _axpy(other_coeffs, factor, coeffs),
                other_rhs - factor * work[rank][1],
                _axpy(other_combo, factor, combo),
            )
        pivots.append(col)
        rank += 1

    for r in range(rank, len(work)):
        coeffs, rhs, combo = work[r]
        if rhs:
            witness = Witness(
                combination=tuple(sorted(combo.items())),
                rhs=rhs,
                provenance=tuple(ls.rows[k].provenance for k in sorted(combo)),
            )
            logger.info(f"System infeasible (rank {rank}); witness combines {len(combo)} rows")
            return SolveResult(SolveStatus.INFEASIBLE, ls.unknowns, witness=witness, rank=rank)

    solution = {unknown: ZERO for unknown in ls.unknowns}
    for r, col in enumerate(pivots):
        solution[ls.unknowns[col]] = work[r][1]

    pivot_set = set(pivots)
    free = [col for col in range(n) if col not in pivot_set]
    nullspace = []
    for f in free:
        vector = {ls.unknowns[f]: ONE}
        for r, col in enumerate(pivots):
            value = work[r][0].get(f)
            if value:
                vector[ls.unknowns[col]] = -value
        nullspace.append(vector)

    status = SolveStatus.UNIQUE if not free else SolveStatus.PARAMETRIC
    logger.info(f"System {status.value}: rank {rank}, {len(free)} free unknowns")
    return SolveResult(status, ls.unknowns, solution, tuple(nullspace), None, rank)


def verify_witness(ls: LinearSystem, witness: Witness) -> bool:
    """Re-sum the witness combination from the original rows."""
    coeffs = [ZERO] * len(ls.unknowns)
    rhs = ZERO
    for index, weight in witness.combination:
        row = ls.rows[index]
        rhs = rhs + weight * row.rhs
        for k, value in enumerate(row.coeffs):
            if value:
                coeffs[k] = coeffs[k] + weight * value
    return all(c.is_zero() for c in coeffs) and not rhs.is_zero() and rhs == witness.rhs


def check_assignment(ls: LinearSystem, assignment: Mapping[Unknown, Scalar]) -> bool:
    """True when the assignment satisfies every row exactly."""
    values = [assignment.get(unknown, ZERO) for unknown in ls.unknowns]
    for row in ls.rows:
        total = ZERO
        for coeff, value in zip(row.coeffs, values):
            if coeff and value:
                total = total + coeff * value
        if total != row.rhs:
            return False
    return True


def operator_from_assignment(spec: AnsatzSpec, assignment: Mapping[Unknown, Scalar]) -> MatrixOp:
    """Assemble a MatrixOp from coefficient values (missing unknowns are zero)."""
    entries: Dict[str, Dict[MultiIndex, Expr]] = {name: {} for name in ENTRY_POSITIONS}
    for unknown in spec.unknowns():
        value = assignment.get(unknown, ZERO)
        if not value:
            continue
        terms = entries[unknown.entry]
        terms[unknown.order] = terms.get(unknown.order, Expr()) + Expr.atom(unknown.atom, value)
    ops = {name: DiffOp(terms) for name, terms in entries.items()}
    return MatrixOp(((ops['A'], ops['B']), (ops['C'], ops['D'])))


def reconstruct(spec: AnsatzSpec, result: SolveResult, allow_parametric: bool = False) -> MatrixOp:
    """
    Build the operator from a solved ansatz.

    Args:
        spec: The ansatz that was assembled.
        result: Its solve result.
        allow_parametric: Use the particular solution of a parametric result.

    Raises:
        PreconditionError: If the result is not unique (or parametric when allowed).
    """
    allowed = {SolveStatus.UNIQUE}
    if allow_parametric:
        allowed.add(SolveStatus.PARAMETRIC)
    if result.status not in allowed:
        raise PreconditionError(f"Cannot reconstruct an operator from a {result.status.value} result")
    return operator_from_assignment(spec, result.solution)


def satisfies_eigenpairs(op: MatrixOp, eigenpairs: Iterable[Eigenpair]) -> bool:
    return all(op.apply(pair.spinor) == pair.spinor.scale(pair.eigenvalue) for pair in eigenpairs)


@dataclass(frozen=True)
class Derivation:
    """Assembled system, its solution and (when available) the operator."""
    spec: AnsatzSpec
    system: LinearSystem
    result: SolveResult
    operator: Optional[MatrixOp] = None

    @property
    def status(self) -> SolveStatus:
        return self.result.status


def derive(spec: AnsatzSpec) -> Derivation:
    """assemble + solve + reconstruct (particular solution for parametric results)."""
    system = assemble(spec)
    result = solve(system)
    operator = None
    if result.status is not SolveStatus.INFEASIBLE:
        operator = reconstruct(spec, result, allow_parametric=True)
    return Derivation(spec, system, result, operator)


@dataclass(frozen=True)
class PhaseTrial:
    """One per-vector theta phase assignment (half-angle frequencies)."""
    frequencies: Tuple[int, int]
    derivation: Derivation

    @property
    def consistent(self) -> bool:
        return self.derivation.status is SolveStatus.UNIQUE


def search_phases(
    plus: Spinor,
    minus: Spinor,
    eigenvalues: Tuple[Scalar, Scalar] = (HALF, -HALF),
    frequencies: Sequence[int] = (0, 1, -1),
    pattern: Iterable[str] = ('A', 'D'),
) -> List[PhaseTrial]:
    """
    Try every assignment of exp(i*m*theta/2) phases to the two vectors.

    Returns one trial per (m_plus, m_minus) pair, in the given frequency order.
    """
    trials = []
    for m_plus in frequencies:
        for m_minus in frequencies:
            spec = AnsatzSpec(
                (Eigenpair(scale_phase(plus, exp_i(theta=m_plus)), eigenvalues[0]),
                 Eigenpair(scale_phase(minus, exp_i(theta=m_minus)), eigenvalues[1])),
                pattern=frozenset(pattern),
                name=f"phase({m_plus},{m_minus})",
            )
            trials.append(PhaseTrial((m_plus, m_minus), derive(spec)))
    consistent = [t.frequencies for t in trials if t.consistent]
    logger.info(f"Phase search: {len(consistent)} of {len(trials)} assignments give a unique operator")
    return trials


# Ansatz documents

def _load_schema() -> Dict[str, Any]:
    with open(ANSATZ_SCHEMA_PATH, 'r') as f:
        return json.load(f)


def _parse_eigenvalue(value: Union[int, str]) -> Scalar:
    try:
        return Scalar.of(Fraction(str(value).strip().lstrip('+')))
    except (ValueError, ZeroDivisionError):
        raise AnsatzSchemaError(f"Invalid eigenvalue: {value!r}")


def _parse_spinor(value: Union[str, Mapping[str, str]], index: int) -> Spinor:
    if isinstance(value, str):
        from .factory import get_spinor
        try:
            return get_spinor(value)
        except UnknownIdentifierError as e:
            raise AnsatzSchemaError(f"Eigenpair {index}: {e}") from e
    top, bottom = parse(value['top']), parse(value['bottom'])
    return Spinor(top, bottom, SpinorMeta('derived', None, False, f"eigenpair{index}"))


def ansatz_from_dict(doc: Mapping[str, Any]) -> AnsatzSpec:
    """
    Build an AnsatzSpec from a decoded ansatz document.

    Raises:
        AnsatzSchemaError: If the document does not match the schema.
        ParseError: If a spinor component expression does not parse.
    """
    try:
        jsonschema.validate(instance=doc, schema=_load_schema())
    except jsonschema.ValidationError as e:
        raise AnsatzSchemaError(f"Ansatz document invalid: {e.message}") from e

    eigenpairs = tuple(
        Eigenpair(_parse_spinor(item['spinor'], k), _parse_eigenvalue(item['eigenvalue']))
        for k, item in enumerate(doc['eigenpairs'])
    )
    kwargs: Dict[str, Any] = {'name': doc.get('name', '')}
    if 'pattern' in doc:
        kwargs['pattern'] = frozenset(doc['pattern'])
    if 'derivative_orders' in doc:
        kwargs['derivative_orders'] = tuple(MultiIndex(*alpha) for alpha in doc['derivative_orders'])
    if 'basis' in doc:
        kwargs['basis'] = tuple(FreqVec.of(atom) for atom in doc['basis'])
    try:
        return AnsatzSpec(eigenpairs, **kwargs)
    except ValueError as e:
        raise AnsatzSchemaError(f"Ansatz document invalid: {e}") from e


def load_ansatz(path: Union[str, Path]) -> AnsatzSpec:
    """
    Read an ansatz JSON file.

    Raises:
        AnsatzSchemaError: If the file cannot be read, is not JSON, or fails the schema.
    """
    path = Path(path)
    try:
        with open(path, 'r') as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise AnsatzSchemaError(f"Cannot read ansatz file {path}: {e}") from e
    spec = ansatz_from_dict(doc)
    logger.info(f"Loaded ansatz '{spec.name or path.name}' with {len(spec.eigenpairs)} eigenpairs")
    return spec


def bundled_ansatz_path(name: str) -> Path:
    """Path of a bundled ansatz file ('z', 'z_diagonal', 'x', 'y_no_phase', 'y_printed', 'y_corrected')."""
    path = DATA_DIR / 'ansatz' / f"{name}.json"
    if not path.exists():
        raise UnknownIdentifierError(f"No bundled ansatz named '{name}'")
    return path
