"""
Tests for the floating-point oracle.
"""
import numpy as np
import pytest

from spindiff.diffop import MatrixOp
from spindiff.factory import get_operator, get_spinor
from spindiff.oracle import CheckReport, SamplePlan, crosscheck, fd_apply, order_step
from spindiff.scalar import HALF


def deviation(op, s, angles, step):
    numeric = fd_apply(op, s, angles, step)
    symbolic = op.apply(s).evaluate(*angles)
    return max(abs(n - e) for n, e in zip(numeric, symbolic))


@pytest.mark.numeric
class TestFdApply:
    """Test pointwise finite-difference application."""

    def test_sz_on_z_plus(self):
        """Test Sz z+ at (1.0, 0.5) agrees with the exact image."""
        assert deviation(get_operator('Sz'), get_spinor('z+'), (1.0, 0.5), 1e-5) < 1e-8

    def test_eigenvalue_at_point(self):
        """Test the numeric image of z+ is half of z+."""
        top, bottom = fd_apply(get_operator('Sz'), get_spinor('z+'), (1.0, 0.5), 1e-5)
        expected = get_spinor('z+').evaluate(1.0, 0.5)
        assert abs(top - 0.5 * expected[0]) < 1e-8
        assert abs(bottom - 0.5 * expected[1]) < 1e-8

    def test_printed_y_plus_has_negative_eigenvalue(self):
        """Test Sy on the printed y+ vector gives -1/2 times it."""
        s = get_spinor('yprinted+')
        top, bottom = fd_apply(get_operator('Sy'), s, (0.8, 0.3), 1e-5)
        expected = s.evaluate(0.8, 0.3)
        assert abs(top + 0.5 * expected[0]) < 1e-8
        assert abs(bottom + 0.5 * expected[1]) < 1e-8

    def test_zero_operator(self):
        """Test the zero operator gives zero."""
        assert fd_apply(MatrixOp.zero(), get_spinor('x+'), (1.0, 2.0), 1e-5) == (0, 0)

    def test_second_order_operator(self):
        """Test the second-order S2 form at a point."""
        assert deviation(get_operator('S2closed'), get_spinor('x-'), (1.2, 4.0), 1e-5) < 1e-6

    def test_generalized_spinor_angles(self):
        """Test four-angle evaluation on the generalized family."""
        assert deviation(get_operator('Sx'), get_spinor('gen+'), (1.0, 0.5, 0.7, 2.0), 1e-5) < 1e-8

    def test_step_halving(self):
        """Test the error shrinks roughly fourfold when the step halves."""
        op, s = get_operator('Sz'), get_spinor('z+')
        coarse = deviation(op, s, (1.0, 0.5), 1e-2)
        fine = deviation(op, s, (1.0, 0.5), 5e-3)
        assert 3.5 < coarse / fine < 4.5

    @pytest.mark.parametrize('step', [0.0, -1e-5])
    def test_nonpositive_step(self, step):
        """Test invalid steps."""
        with pytest.raises(ValueError):
            fd_apply(get_operator('Sz'), get_spinor('z+'), (1.0, 0.5), step)

    def test_order_step(self):
        """Test the step grows tenfold per extra derivative order."""
        assert order_step(1e-5, 1) == 1e-5
        assert order_step(1e-5, 2) == pytest.approx(1e-4)
        assert order_step(1e-5, 3) == pytest.approx(1e-3)


@pytest.mark.numeric
class TestCrosscheck:
    """Test sampled cross-checks."""

    @pytest.mark.parametrize('op_name,spinor_id,value', [
        ('Sz', 'z+', HALF),
        ('Sx', 'x-', -HALF),
        ('Sy', 'ycorr+', HALF),
        ('Sy', 'yprinted-', -HALF),
    ])
    def test_eigenpairs_pass(self, op_name, spinor_id, value):
        """Test known eigenpairs pass both criteria."""
        report = crosscheck(get_operator(op_name), get_spinor(spinor_id), value, SamplePlan(count=50))
        assert report.fd_pass and report.eigen_pass
        assert report.passed
        assert report.samples == 50
        assert report.label == spinor_id

    def test_unsymmetrized_fails_eigen(self):
        """Test the plain z+ vector passes fd but fails the eigen criterion."""
        report = crosscheck(get_operator('Sz'), get_spinor('z+unsym'), HALF, SamplePlan(count=50))
        assert report.fd_pass
        assert report.eigen_pass is False
        assert not report.passed

    def test_without_eigenvalue(self):
        """Test eigen fields stay empty when no eigenvalue is given."""
        report = crosscheck(get_operator('Sx'), get_spinor('z+'), plan=SamplePlan(count=10), label='Sx z+')
        assert report.eigen_deviation is None and report.eigen_pass is None
        assert report.passed
        assert report.label == 'Sx z+'

    def test_empty_plan(self):
        """Test count = 0 gives a vacuous pass with a note."""
        report = crosscheck(get_operator('Sz'), get_spinor('z+unsym'), HALF, SamplePlan(count=0))
        assert report.passed
        assert report.note == 'no samples'
        assert report.samples == 0

    def test_deterministic(self):
        """Test the same seed yields identical reports."""
        plan = SamplePlan(seed=42, count=20)
        first = crosscheck(get_operator('Sx'), get_spinor('x+'), HALF, plan)
        second = crosscheck(get_operator('Sx'), get_spinor('x+'), HALF, plan)
        assert first == second

    def test_to_dict(self):
        """Test report serialization."""
        report = CheckReport('z+', 3, 1e-9, True)
        assert report.to_dict() == {
            'label': 'z+', 'samples': 3, 'fd_deviation': 1e-9, 'fd_pass': True,
            'eigen_deviation': None, 'eigen_pass': None, 'note': '',
        }


class TestSamplePlan:
    """Test sample plan configuration."""

    def test_samples_shape_and_range(self):
        """Test sample array shape and theta bounds."""
        plan = SamplePlan(seed=3, count=200)
        samples = plan.samples()
        assert samples.shape == (200, 4)
        assert np.all(samples[:, 0] >= 0.1) and np.all(samples[:, 0] <= np.pi - 0.1)
        assert np.all(samples[:, 1] >= 0.0) and np.all(samples[:, 1] < 2 * np.pi)

    def test_seed_reproducible(self):
        """Test the same seed gives the same samples and a new seed new ones."""
        np.testing.assert_array_equal(SamplePlan(seed=1).samples(), SamplePlan(seed=1).samples())
        assert not np.array_equal(SamplePlan(seed=1).samples(), SamplePlan(seed=2).samples())

    def test_from_config(self):
        """Test building from a config dict."""
        plan = SamplePlan.from_config({'seed': 5, 'count': 10, 'tolerance': 1e-4})
        assert (plan.seed, plan.count, plan.tolerance) == (5, 10, 1e-4)
        assert SamplePlan.from_config() == SamplePlan()

    def test_from_config_unknown_key(self):
        """Test unknown keys are rejected."""
        with pytest.raises(ValueError) as exc_info:
            SamplePlan.from_config({'samples': 10})
        assert 'samples' in str(exc_info.value)

    @pytest.mark.parametrize('kwargs', [
        {'count': -1},
        {'fd_step': 0.0},
        {'tolerance': -1e-6},
        {'theta_range': (0.0, 1.0)},
        {'theta_range': (1.0, 4.0)},
        {'theta_range': (2.0, 1.0)},
        {'phi_range': (1.0, 1.0)},
    ])
    def test_invalid_values(self, kwargs):
        """Test out-of-range configuration."""
        with pytest.raises(ValueError):
            SamplePlan(**kwargs)
