"""
Floating-point cross-check of symbolic results.

Derivatives are realized by central differences on direct evaluations of the
spinor components, independently of the exact differentiation in :mod:`expr`.
"""
from dataclasses import asdict, dataclass, fields
from math import comb, pi
from typing import Any, Dict, Optional, Sequence, Tuple
import logging

import numpy as np

from .diffop import MatrixOp, MultiIndex
from .expr import Expr
from .scalar import ScalarLike, Scalar
from .spinor import Spinor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplePlan:
    """
    Seeded random angle samples away from the poles.

    Attributes:
        seed: Seed of the numpy Generator; same seed gives the same samples.
        count: Number of samples (0 gives a vacuous check).
        theta_range: Closed theta interval, strictly inside (0, pi).
        phi_range: Half-open phi interval.
        fd_step: Central-difference step for first derivatives.
        tolerance: Absolute agreement tolerance.
    """
    seed: int = 0
    count: int = 100
    theta_range: Tuple[float, float] = (0.1, pi - 0.1)
    phi_range: Tuple[float, float] = (0.0, 2 * pi)
    fd_step: float = 1e-5
    tolerance: float = 1e-6

    def __post_init__(self) -> None:
        object.__setattr__(self, 'theta_range', tuple(float(x) for x in self.theta_range))
        object.__setattr__(self, 'phi_range', tuple(float(x) for x in self.phi_range))
        if self.count < 0:
            raise ValueError(f"count must be non-negative, got {self.count}")
        if self.fd_step <= 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        lo, hi = self.theta_range
        if not 0 < lo < hi < pi:
            raise ValueError(f"theta_range must lie strictly inside (0, pi), got {self.theta_range}")
        lo, hi = self.phi_range
        if not lo < hi:
            raise ValueError(f"phi_range must be increasing, got {self.phi_range}")

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]] = None) -> 'SamplePlan':
        """
        Build a plan from a dict, rejecting unknown keys.

        Raises:
            ValueError: If a key is unknown or a value is out of range.
        """
        config = dict(config or {})
        allowed = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - allowed)
        if unknown:
            raise ValueError(f"SamplePlan does not accept config keys: {', '.join(unknown)}")
        return cls(**config)

    def samples(self) -> np.ndarray:
        """Array of shape (count, 4): theta, phi, theta_p, phi_p."""
        rng = np.random.default_rng(self.seed)
        theta = rng.uniform(*self.theta_range, size=self.count)
        phi = rng.uniform(*self.phi_range, size=self.count)
        theta_p = rng.uniform(*self.theta_range, size=self.count)
        phi_p = rng.uniform(*self.phi_range, size=self.count)
        return np.column_stack([theta, phi, theta_p, phi_p])


@dataclass(frozen=True)
class CheckReport:
    """
    Result of one oracle cross-check.

    ``eigen_deviation`` and ``eigen_pass`` are None when no eigenvalue was
    expected.
    """
    label: str
    samples: int
    fd_deviation: float
    fd_pass: bool
    eigen_deviation: Optional[float] = None
    eigen_pass: Optional[bool] = None
    note: str = ''

    @property
    def passed(self) -> bool:
        return self.fd_pass and self.eigen_pass is not False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def order_step(step: float, order: int) -> float:
    """Step for a derivative of total order ``order``; grows tenfold per extra order."""
    return step * 10 ** (order - 1) if order > 1 else step


def _central_difference(e: Expr, alpha: MultiIndex, step: float, theta, phi, theta_p, phi_p):
    """Binomial central-difference stencil, tensor product over theta and phi."""
    k_theta, k_phi = alpha
    if alpha.order == 0:
        return e.evaluate(theta, phi, theta_p, phi_p)
    h = order_step(step, alpha.order)
    total = 0j
    for a in range(k_theta + 1):
        for b in range(k_phi + 1):
            weight = (-1) ** (a + b) * comb(k_theta, a) * comb(k_phi, b)
            total = total + weight * e.evaluate(
                theta + (k_theta / 2 - a) * h, phi + (k_phi / 2 - b) * h, theta_p, phi_p
            )
    return total / h ** alpha.order


def _fd_components(op: MatrixOp, s: Spinor, step: float, theta, phi, theta_p=0.0, phi_p=0.0):
    components = s.components
    result = []
    for i in range(2):
        value = 0j
        for j in range(2):
            for alpha, coeff in op[i, j].terms.items():
                derivative = _central_difference(components[j], alpha, step, theta, phi, theta_p, phi_p)
                value = value + coeff.evaluate(theta, phi, theta_p, phi_p) * derivative
        result.append(value)
    return tuple(result)


def fd_apply(op: MatrixOp, s: Spinor, angles: Sequence[float], step: float) -> Tuple[complex, complex]:
    """
    Apply ``op`` to ``s`` numerically at one point.

    Args:
        op: Operator whose derivatives are replaced by central differences.
        s: Spinor evaluated directly.
        angles: (theta, phi) or (theta, phi, theta_p, phi_p).
        step: Central-difference step (> 0).

    Raises:
        ValueError: If step is not positive.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    values = tuple(float(a) for a in angles) + (0.0,) * (4 - len(angles))
    top, bottom = _fd_components(op, s, step, *values)
    return complex(top), complex(bottom)


def _max_deviation(left, right, count: int) -> float:
    return max(
        float(np.max(np.abs(np.broadcast_to(a - b, (count,))))) for a, b in zip(left, right)
    )


def crosscheck(
    op: MatrixOp,
    s: Spinor,
    expected_eigenvalue: Optional[ScalarLike] = None,
    plan: Optional[SamplePlan] = None,
    label: str = '',
) -> CheckReport:
    """
    Compare finite-difference application with the symbolic result.

    Criteria: (a) fd_apply against evaluation of ``op.apply(s)``; (b) if an
    eigenvalue is expected, ``op.apply(s)`` against ``eigenvalue * s``.
    """
    plan = plan or SamplePlan()
    label = label or s.meta.label
    expected = None if expected_eigenvalue is None else Scalar.of(expected_eigenvalue)

    if plan.count == 0:
        logger.warning(f"Crosscheck {label}: empty sample plan")
        return CheckReport(
            label, 0, 0.0, True,
            0.0 if expected is not None else None,
            True if expected is not None else None,
            note='no samples',
        )

    theta, phi, theta_p, phi_p = plan.samples().T
    symbolic = op.apply(s).evaluate(theta, phi, theta_p, phi_p)
    numeric = _fd_components(op, s, plan.fd_step, theta, phi, theta_p, phi_p)
    fd_deviation = _max_deviation(numeric, symbolic, plan.count)

    eigen_deviation = eigen_pass = None
    if expected is not None:
        target = s.scale(expected).evaluate(theta, phi, theta_p, phi_p)
        eigen_deviation = _max_deviation(symbolic, target, plan.count)
        eigen_pass = eigen_deviation < plan.tolerance

    report = CheckReport(
        label, plan.count, fd_deviation, fd_deviation < plan.tolerance, eigen_deviation, eigen_pass
    )
    logger.debug(f"Crosscheck {label}: fd deviation {fd_deviation:.3e}, eigen deviation {eigen_deviation}")
    return report
