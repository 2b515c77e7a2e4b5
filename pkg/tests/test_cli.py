"""
Tests for the command-line front end.
"""
import json
import logging

import pytest

from spindiff import __version__
from spindiff.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, format_complex, main
from spindiff.verify import ItemStatus, VerificationItem, VerificationReport


@pytest.fixture(autouse=True)
def restore_logging():
    """main() reconfigures the root logger; put it back after each test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.mark.cli
class TestEval:
    """Test the eval command."""

    def test_cos_at_zero(self, capsys):
        """Test cos(theta/2) at theta = 0 prints 1.0."""
        assert main(['eval', '--expr', 'cos(theta/2)', '--theta', '0', '--phi', '0']) == EXIT_OK
        assert capsys.readouterr().out.strip() == '1.0'

    def test_complex_value(self, capsys):
        """Test a purely imaginary result."""
        assert main(['eval', '--expr', 'i*cos(theta/2)', '--theta', '0']) == EXIT_OK
        assert capsys.readouterr().out.strip() == '0.0+1.0j'

    def test_initial_angles(self, capsys):
        """Test --theta-p and --phi-p reach the evaluation."""
        assert main(['eval', '--expr', 'cos(theta_p/2)', '--theta-p', '0']) == EXIT_OK
        assert capsys.readouterr().out.strip() == '1.0'

    def test_parse_error(self, capsys):
        """Test a grammar error exits 2 with its position."""
        assert main(['eval', '--expr', 'sin(theta/3)']) == EXIT_USAGE
        err = capsys.readouterr().err
        assert err.startswith('error:')
        assert 'position 4' in err

    @pytest.mark.parametrize('text,position', [
        ('cos(theta/2', 10),
        ('exp(theta)', 4),
    ])
    def test_syntax_and_exponent_errors(self, capsys, text, position):
        """Test unbalanced parentheses and real exponents exit 2 with their position."""
        assert main(['eval', '--expr', text]) == EXIT_USAGE
        err = capsys.readouterr().err
        assert err.startswith('error:')
        assert f'position {position}' in err

    def test_format_complex(self):
        """Test complex formatting."""
        assert format_complex(complex(0.5, 0)) == '0.5'
        assert format_complex(complex(0.5, -2)) == '0.5-2.0j'


@pytest.mark.cli
class TestApplyAndCommutator:
    """Test apply and commutator commands."""

    def test_apply_eigenvector(self, capsys):
        """Test Sz on z+ reports eigenvalue 1/2."""
        assert main(['apply', '--op', 'Sz', '--spinor', 'z+']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith('top = ')
        assert lines[1].startswith('bottom = ')
        assert lines[2] == 'eigenvalue = 1/2'

    def test_apply_non_eigenvector(self, capsys):
        """Test Sz on z+unsym is reported as not an eigenvector."""
        assert main(['apply', '--op', 'Sz', '--spinor', 'z+unsym']) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == 'not an eigenvector'

    def test_apply_unknown_spinor(self, capsys):
        """Test unknown spinor ids exit 2."""
        assert main(['apply', '--op', 'Sz', '--spinor', 'w+']) == EXIT_USAGE
        assert 'Unknown spinor' in capsys.readouterr().err

    def test_self_commutator(self, capsys):
        """Test [Sx, Sx] prints the zero operator."""
        assert main(['commutator', '--ops', 'Sx,Sx']) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ['A = 0', 'B = 0', 'C = 0', 'D = 0']

    def test_cyclic_commutator(self, capsys):
        """Test [Sx, Sy] is diagonal."""
        assert main(['commutator', '--ops', 'Sx, Sy', '--style', 'exponential']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[1] == 'B = 0' and lines[2] == 'C = 0'

    @pytest.mark.parametrize('ops', ['Sx', 'Sx,Sy,Sz', 'Sx,'])
    def test_bad_ops(self, ops, capsys):
        """Test --ops needs exactly two names."""
        assert main(['commutator', '--ops', ops]) == EXIT_USAGE
        assert 'error:' in capsys.readouterr().err


@pytest.mark.cli
class TestSolve:
    """Test the solve command."""

    def test_bundled_unique(self, capsys):
        """Test a bundled diagonal ansatz in text form."""
        assert main(['solve', 'x']) == EXIT_OK
        out = capsys.readouterr().out
        assert 'status: unique' in out
        assert 'operator:' in out

    def test_infeasible_json(self, capsys):
        """Test the infeasible y-family reports a witness and still exits 0."""
        assert main(['solve', 'y_no_phase', '--format', 'json']) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc['status'] == 'infeasible'
        assert doc['witness']['rows']
        assert doc['witness']['rhs'] != '0'

    def test_file_path(self, tmp_path, capsys):
        """Test an ansatz file on disk."""
        path = tmp_path / 'zdiag.json'
        path.write_text(json.dumps({
            'name': 'zdiag',
            'eigenpairs': [{'spinor': 'z+', 'eigenvalue': '1/2'}, {'spinor': 'z-', 'eigenvalue': '-1/2'}],
            'pattern': ['A', 'D'],
        }))
        assert main(['solve', str(path), '--format', 'json']) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc['ansatz'] == 'zdiag'
        assert doc['status'] == 'unique'
        assert doc['nullspace'] == []

    def test_corrupted_file(self, tmp_path, capsys):
        """Test a broken ansatz file exits 2."""
        path = tmp_path / 'broken.json'
        path.write_text('not json')
        assert main(['solve', str(path)]) == EXIT_USAGE
        assert 'error:' in capsys.readouterr().err

    def test_zero_eigenpairs(self, tmp_path, capsys):
        """Test an ansatz with no eigenpairs exits 2."""
        path = tmp_path / 'empty.json'
        path.write_text(json.dumps({'eigenpairs': []}))
        assert main(['solve', str(path)]) == EXIT_USAGE

    def test_unknown_bundle(self, capsys):
        """Test unknown bundled names exit 2."""
        assert main(['solve', 'nonexistent']) == EXIT_USAGE


@pytest.mark.cli
class TestVerify:
    """Test the verify command."""

    def test_commutators_json(self, capsys):
        """Test a passing suite in JSON."""
        assert main(['verify', '--suite', 'commutators', '--format', 'json', '--seed', '5']) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc['suite'] == 'commutators'
        assert doc['seed'] == 5
        assert doc['summary']['pass'] == 4

    def test_eigen_text(self, capsys):
        """Test the documented discrepancy appears in text output."""
        assert main(['verify', '--suite', 'eigen']) == EXIT_OK
        assert 'DOCUMENTED-DISCREPANCY' in capsys.readouterr().out

    def test_failure_exit_code(self, mocker, capsys):
        """Test a failed item gives exit code 1."""
        report = VerificationReport('eigen', (VerificationItem('x', 'broken', ItemStatus.FAIL),))
        run_suite = mocker.patch('spindiff.cli.run_suite', return_value=report)
        assert main(['verify', '--suite', 'eigen']) == EXIT_FAIL
        run_suite.assert_called_once()
        assert run_suite.call_args.args[0] == 'eigen'


@pytest.mark.cli
class TestUsage:
    """Test argument handling."""

    def test_no_command(self, capsys):
        """Test a missing subcommand exits 2."""
        assert main([]) == EXIT_USAGE

    def test_unknown_suite(self, capsys):
        """Test argparse choices exit 2."""
        assert main(['verify', '--suite', 'hermiticity']) == EXIT_USAGE

    def test_version(self, capsys):
        """Test --version exits 0."""
        assert main(['--version']) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_verbose_logging(self, capsys):
        """Test -vv sends debug logs to stderr."""
        assert main(['-vv', 'eval', '--expr', 'cos(theta/2)']) == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out.strip() == '1.0'
        assert 'Canonical form' in captured.err
