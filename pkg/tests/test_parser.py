"""
Unit tests for the expression grammar and printer.
"""
import random
from fractions import Fraction

import pytest

from spindiff.base import ExprSyntaxError, LatticeError, NonImaginaryExponentError, ParseError
from spindiff.expr import Expr, FreqVec, cos_, exp_i, sin_
from spindiff.parser import STYLES, format_scalar, parse, print_expr, tokenize
from spindiff.scalar import HALF, I, INV_SQRT2, SQRT2, Scalar

pytestmark = pytest.mark.unit


def random_expr(rng: random.Random) -> Expr:
    result = Expr()
    for _ in range(rng.randint(0, 5)):
        freq = FreqVec(*(rng.choice([0, 0, rng.randint(-4, 4)]) for _ in range(4)))
        coeff = Scalar(*(rng.choice([Fraction(0), Fraction(rng.randint(-5, 5), rng.randint(1, 4))])
                         for _ in range(4)))
        result = result + Expr.atom(freq, coeff)
    return result


class TestParse:
    """Test parsing into canonical Exprs."""

    def test_cos_half_angle(self):
        """Test cos(theta/2) has two atoms with coefficient 1/2."""
        e = parse("cos(theta/2)")
        assert e == cos_('theta')
        assert e.coeff(FreqVec(1)) == HALF

    def test_normalized_superposition(self):
        """Test the x-family top component."""
        e = parse("(1/sqrt2)*(sin(theta/2)+cos(theta/2))*exp(-i*phi/2)")
        expected = (sin_('theta') + cos_('theta')) * exp_i(phi=-1, coeff=INV_SQRT2)
        assert e == expected

    def test_constants(self):
        """Test i, sqrt2 and rational arithmetic."""
        assert parse("i*sqrt2 - 3/4") == Expr.constant(Scalar(Fraction(-3, 4), 0, 0, 1))
        assert parse("sqrt2^-2") == Expr.constant(HALF)
        assert parse("-i^2") == Expr.constant(1)

    def test_whole_angles(self):
        """Test integer multiples of an angle."""
        assert parse("sin(theta)") == sin_('theta', 2)
        assert parse("exp(i*(phi - phi_p))") == exp_i(phi=2, phi_p=-2)
        assert parse("exp(2*i*theta)") == exp_i(theta=4)

    def test_division_by_constant(self):
        """Test division by nonzero constants."""
        assert parse("exp(i*theta)/(2*i)") == exp_i(theta=2, coeff=-I * HALF)


class TestParseErrors:
    """Test the documented error classes."""

    def test_lattice_violation(self):
        """Test sin(theta/3) is off the half-integer lattice."""
        with pytest.raises(LatticeError) as exc_info:
            parse("sin(theta/3)")
        assert exc_info.value.position == 4

    def test_constant_offset_rejected(self):
        """Test constant angle offsets are off the lattice."""
        with pytest.raises(LatticeError):
            parse("cos(theta + 1)")

    def test_non_imaginary_exponent(self):
        """Test exp(theta) is rejected."""
        with pytest.raises(NonImaginaryExponentError):
            parse("exp(theta)")

    @pytest.mark.parametrize('text', [
        "cos(theta/2",
        "cos(theta/2))",
        "",
        "2 +",
        "theta",
        "cos()",
        "foo(theta)",
        "1/0",
        "exp(i*theta)/cos(theta)",
        "cos(theta*phi)",
        "2 $ 3",
    ])
    def test_syntax_errors(self, text):
        """Test malformed input raises ExprSyntaxError."""
        with pytest.raises(ExprSyntaxError):
            parse(text)

    @pytest.mark.parametrize('text', ["cos(theta/2", "cos(", "(", "sin(theta/3)", "exp(phi)", "1 +"])
    def test_positions_within_input(self, text):
        """Test every reported position is inside the input."""
        with pytest.raises(ParseError) as exc_info:
            parse(text)
        assert 0 <= exc_info.value.position < max(len(text), 1)

    @pytest.mark.parametrize('text,position', [
        ("cos(theta/\u00b2)", 10),
        ("2\u00b2", 1),
        ("\u0663", 0),
    ])
    def test_non_ascii_digits_rejected(self, text, position):
        """Test digits outside 0-9 are a positioned syntax error."""
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse(text)
        assert exc_info.value.position == position

    def test_oversized_literal_rejected(self):
        """Test an integer literal with thousands of digits is a positioned syntax error."""
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse("2 + " + "1" * 5000)
        assert exc_info.value.position == 4
        assert "too large" in str(exc_info.value)

    def test_oversized_exponent_rejected(self):
        """Test an exponent literal past the digit limit is a positioned syntax error."""
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse("sqrt2^" + "9" * 2000)
        assert exc_info.value.position == 6


class TestPrint:
    """Test deterministic printing."""

    def test_exponential_style(self):
        """Test cos(theta/2) in exponential style, descending frequency order."""
        assert print_expr(cos_('theta'), 'exponential') == "(1/2)*exp(i*theta/2) + (1/2)*exp(-i*theta/2)"

    def test_trig_style(self):
        """Test conjugate atoms pair into cos and sin."""
        assert print_expr(cos_('theta'), 'trig') == "cos(theta/2)"
        assert print_expr(sin_('theta', 2), 'trig') == "sin(theta)"

    def test_trig_falls_back_to_exponential(self):
        """Test unpaired atoms stay exponential."""
        assert print_expr(exp_i(phi=-1), 'trig') == "exp(-i*phi/2)"

    def test_zero(self):
        """Test the zero Expr prints as 0."""
        assert print_expr(Expr()) == '0'

    def test_unknown_style(self):
        """Test unknown styles are rejected."""
        with pytest.raises(ValueError):
            print_expr(cos_('theta'), 'latex')

    def test_format_scalar(self):
        """Test standalone scalar text."""
        assert format_scalar(-HALF) == '-1/2'
        assert format_scalar(SQRT2 + I) == 'sqrt2 + i'
        assert parse(format_scalar(Scalar(1, -2, Fraction(3, 4), 5))) == Expr.constant(Scalar(1, -2, Fraction(3, 4), 5))

    def test_tokenize_positions(self):
        """Test token offsets."""
        tokens = tokenize("cos(theta)")
        assert [t.pos for t in tokens[:4]] == [0, 3, 4, 9]


class TestRoundTrip:
    """Test parse(print(e)) == e."""

    @pytest.mark.parametrize('style', STYLES)
    def test_random_round_trip(self, style):
        """Test 1000 random Exprs survive print then parse."""
        rng = random.Random(1234)
        for _ in range(1000):
            e = random_expr(rng)
            text = print_expr(e, style)
            assert parse(text) == e, text

    def test_printing_is_deterministic(self):
        """Test construction order does not affect printed text."""
        a = exp_i(theta=1) + exp_i(phi=-2, coeff=I) + Expr.constant(3)
        b = Expr.constant(3) + exp_i(phi=-2, coeff=I) + exp_i(theta=1)
        assert print_expr(a) == print_expr(b)
