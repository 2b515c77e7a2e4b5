"""
Unit tests for canonical exponential sums.
"""
import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from spindiff.expr import (
    Expr,
    FreqVec,
    cos_,
    exp_i,
    expr_add,
    expr_conj,
    expr_diff,
    expr_eval,
    expr_mul,
    expr_subst_zero,
    sin_,
)
from spindiff.scalar import HALF, I, INV_SQRT2, ONE, Scalar

pytestmark = pytest.mark.unit


def random_expr(rng: random.Random, terms: int = 4) -> Expr:
    result = Expr()
    for _ in range(rng.randint(0, terms)):
        freq = FreqVec(*(rng.randint(-3, 3) for _ in range(4)))
        coeff = Scalar(*(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)))
        result = result + Expr.atom(freq, coeff)
    return result


@pytest.fixture
def rng():
    return random.Random(7)


class TestConstruction:
    """Test canonical construction."""

    def test_zero_coefficients_dropped(self):
        """Test zero terms never stored."""
        e = Expr({FreqVec(1): ONE, FreqVec(2): 0})
        assert len(e) == 1

    def test_equivalent_keys_accumulate(self):
        """Test keys that pad to the same frequency add their coefficients."""
        e = Expr({(1,): 1, (1, 0, 0, 0): 1})
        assert e == Expr.atom(FreqVec(1), 2)
        assert Expr({(1,): 1, (1, 0): -1}).is_zero()

    def test_cos_is_two_atoms(self):
        """Test cos(theta/2) == (e^{i theta/2} + e^{-i theta/2})/2."""
        c = cos_('theta')
        assert c.coeff(FreqVec(1)) == HALF
        assert c.coeff(FreqVec(-1)) == HALF
        assert len(c) == 2

    def test_pythagoras(self):
        """Test cos^2 + sin^2 == 1 exactly."""
        c, s = cos_('theta'), sin_('theta')
        assert c * c + s * s == Expr.constant(1)
        assert c * c + s * s == 1

    def test_double_angle(self):
        """Test 2 sin(x/2) cos(x/2) == sin(x)."""
        assert (sin_('theta') * cos_('theta')).scale(2) == sin_('theta', 2)

    def test_term_order_independence(self, rng):
        """Test Exprs built in different orders compare equal."""
        for _ in range(50):
            atoms = [Expr.atom(FreqVec(*(rng.randint(-2, 2) for _ in range(4))), rng.randint(1, 5))
                     for _ in range(5)]
            forward = sum(atoms, Expr())
            backward = sum(reversed(atoms), Expr())
            assert forward == backward
            assert hash(forward) == hash(backward)


class TestAlgebra:
    """Test ring properties and conjugation."""

    def test_associativity_and_distributivity(self, rng):
        """Test (a+b)+c == a+(b+c) and a(b+c) == ab+ac."""
        for _ in range(50):
            a, b, c = random_expr(rng), random_expr(rng), random_expr(rng)
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert expr_mul(a, b) == expr_mul(b, a)

    def test_conj_involution_and_homomorphism(self, rng):
        """Test conj(conj(e)) == e and conj(ab) == conj(a) conj(b)."""
        for _ in range(50):
            a, b = random_expr(rng), random_expr(rng)
            assert expr_conj(expr_conj(a)) == a
            assert expr_conj(a * b) == expr_conj(a) * expr_conj(b)

    def test_conj_of_phase(self):
        """Test conj(e^{i phi}) == e^{-i phi}."""
        assert exp_i(phi=2).conj() == exp_i(phi=-2)

    def test_power(self):
        """Test integer powers."""
        assert exp_i(theta=1) ** 3 == exp_i(theta=3)
        with pytest.raises(ValueError):
            exp_i(theta=1) ** -1

    def test_sub_and_neg(self):
        """Test subtraction cancels exactly."""
        e = cos_('phi') + exp_i(theta=2, coeff=I)
        assert (e - e).is_zero()
        assert expr_add(e, -e) == Expr()


class TestCalculus:
    """Test exact differentiation and specialization."""

    def test_diff_cos(self):
        """Test d/dtheta cos(theta/2) == -sin(theta/2)/2."""
        assert expr_diff(cos_('theta'), 'theta') == sin_('theta').scale(-HALF)

    def test_diff_phase(self):
        """Test d/dphi e^{i phi/2} == (i/2) e^{i phi/2}."""
        assert expr_diff(exp_i(phi=1), 'phi') == exp_i(phi=1, coeff=I * HALF)

    def test_diff_constant(self):
        """Test derivatives of constants vanish."""
        assert expr_diff(Expr.constant(INV_SQRT2), 'theta').is_zero()

    def test_mixed_partials_commute(self, rng):
        """Test d_theta d_phi == d_phi d_theta."""
        for _ in range(50):
            e = random_expr(rng)
            assert e.diff('theta').diff('phi') == e.diff('phi').diff('theta')

    def test_only_final_angles(self):
        """Test expr_diff rejects the initial-direction angles."""
        with pytest.raises(ValueError):
            expr_diff(exp_i(theta_p=1), 'theta_p')

    def test_subst_zero_collapses(self):
        """Test cos(theta_p/2) at theta_p = 0 is 1."""
        assert expr_subst_zero(cos_('theta_p'), 'theta_p') == Expr.constant(1)
        assert expr_subst_zero(sin_('theta_p'), 'theta_p').is_zero()

    def test_subst_zero_keeps_other_angles(self):
        """Test substitution leaves other frequencies intact."""
        e = exp_i(theta=1, phi_p=2)
        assert e.subst_zero('phi_p') == exp_i(theta=1)

    @pytest.mark.parametrize('var', ['theta', 'phi'])
    def test_subst_zero_only_initial_angles(self, var):
        """Test expr_subst_zero rejects the final-direction angles."""
        with pytest.raises(ValueError):
            expr_subst_zero(exp_i(theta=1, phi=1), var)


class TestEvaluation:
    """Test double-precision evaluation."""

    def test_cos_at_zero(self):
        """Test cos(theta/2) at theta = 0."""
        assert expr_eval(cos_('theta'), [0.0]) == pytest.approx(1.0)

    def test_phase_at_pi(self):
        """Test e^{i phi} at phi = pi."""
        assert expr_eval(exp_i(phi=2), [0.0, math.pi]) == pytest.approx(-1.0)

    def test_symmetrized_top(self):
        """Test e^{-i phi/2} cos(theta/2) against a hand-coded formula."""
        e = exp_i(phi=-1) * cos_('theta')
        expected = cmath.exp(-0.25j) * math.cos(0.5)
        assert abs(expr_eval(e, [1.0, 0.5]) - expected) < 1e-14

    def test_evaluation_homomorphism(self, rng):
        """Test eval(ab) == eval(a) eval(b)."""
        for _ in range(30):
            a, b = random_expr(rng), random_expr(rng)
            angles = [rng.uniform(0, 3) for _ in range(4)]
            assert abs(expr_eval(a * b, angles) - expr_eval(a, angles) * expr_eval(b, angles)) < 1e-12

    def test_derivative_matches_central_difference(self, rng):
        """Test exact derivative against a central difference at step 1e-5."""
        h = 1e-5
        for _ in range(30):
            e = random_expr(rng)
            theta, phi = rng.uniform(0.2, 2.9), rng.uniform(0, 6)
            fd = (expr_eval(e, [theta + h / 2, phi]) - expr_eval(e, [theta - h / 2, phi])) / h
            assert abs(expr_eval(e.diff('theta'), [theta, phi]) - fd) < 1e-6

    def test_vectorized(self):
        """Test evaluation over numpy arrays."""
        theta = np.linspace(0.1, 3.0, 5)
        values = cos_('theta').evaluate(theta)
        np.testing.assert_allclose(values, np.cos(theta / 2), atol=1e-14)
